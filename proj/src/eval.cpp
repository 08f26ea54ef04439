#include "paw/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <unordered_set>

#include "paw/error.hpp"

namespace paw::eval {

void EmbeddingSet::add(const std::string& subject_id, Embedding embedding) {
    if (embedding.size() != dim_)
        throw PawError(ErrorKind::DimensionMismatch, "embedding for subject '" + subject_id + "' has " +
                                                         std::to_string(embedding.size()) + " values, expected " +
                                                         std::to_string(dim_));
    subjects_[subject_id].push_back(std::move(embedding));
}

std::size_t EmbeddingSet::embedding_count() const noexcept {
    std::size_t n = 0;
    for (const auto& [id, list] : subjects_) n += list.size();
    return n;
}

std::vector<std::size_t> EmbeddingSet::counts() const {
    std::vector<std::size_t> m;
    m.reserve(subjects_.size());
    for (const auto& [id, list] : subjects_) m.push_back(list.size());
    return m;
}

PairCounts count_pairs(const std::vector<std::size_t>& images_per_subject) {
    PairCounts c;
    std::uint64_t seen = 0;
    for (std::size_t m : images_per_subject) {
        if (m > 1) c.genuine += static_cast<std::uint64_t>(m) * (m - 1) / 2;
        c.impostor += seen * m;
        seen += m;
    }
    return c;
}

PairCounts count_pairs(const EmbeddingSet& set) { return count_pairs(set.counts()); }

double similarity(const Embedding& a, const Embedding& b, Similarity kind) {
    if (a.size() != b.size()) throw PawError(ErrorKind::DimensionMismatch, "embeddings differ in length");
    double ab = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) ab += a[i] * b[i];
    if (kind == Similarity::Dot) return ab;
    double aa = 0.0, bb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) aa += a[i] * a[i], bb += b[i] * b[i];
    const double denom = std::sqrt(aa) * std::sqrt(bb);
    return denom > 0.0 ? ab / denom : 0.0;
}

namespace {

// Uniform integer in [0, bound] without modulo bias; identical on every
// platform, unlike std::uniform_int_distribution.
std::uint64_t uniform_upto(std::mt19937_64& rng, std::uint64_t bound) {
    if (bound == std::numeric_limits<std::uint64_t>::max()) return rng();
    const std::uint64_t range = bound + 1;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - (std::numeric_limits<std::uint64_t>::max() % range);
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % range;
}

// Floyd's sampling of `k` distinct indices from [0, n), returned sorted.
std::vector<std::uint64_t> sample_indices(std::uint64_t n, std::uint64_t k, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(k) * 2);
    for (std::uint64_t j = n - k; j < n; ++j) {
        const std::uint64_t r = uniform_upto(rng, j);
        if (!chosen.insert(r).second) chosen.insert(j);
    }
    std::vector<std::uint64_t> out(chosen.begin(), chosen.end());
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<const std::vector<Embedding>*> subject_lists(const EmbeddingSet& set) {
    std::vector<const std::vector<Embedding>*> lists;
    for (const auto& [id, list] : set.subjects()) lists.push_back(&list);
    return lists;
}

std::vector<double> genuine_scores(const EmbeddingSet& set, Similarity kind) {
    std::vector<double> scores;
    for (const auto& [id, list] : set.subjects())
        for (std::size_t a = 0; a < list.size(); ++a)
            for (std::size_t b = a + 1; b < list.size(); ++b) scores.push_back(similarity(list[a], list[b], kind));
    return scores;
}

// Impostor pairs enumerate as (subject i < subject j, image a of i, image b of j).
std::vector<double> impostor_scores(const EmbeddingSet& set, const PairSampler& sampler, Similarity kind) {
    const auto lists = subject_lists(set);
    const std::uint64_t total = count_pairs(set).impostor;
    std::vector<double> scores;

    if (sampler.impostor_cap == 0 || sampler.impostor_cap >= total) {
        scores.reserve(static_cast<std::size_t>(total));
        for (std::size_t i = 0; i < lists.size(); ++i)
            for (std::size_t j = i + 1; j < lists.size(); ++j)
                for (const Embedding& a : *lists[i])
                    for (const Embedding& b : *lists[j]) scores.push_back(similarity(a, b, kind));
        return scores;
    }

    const auto picked = sample_indices(total, sampler.impostor_cap, sampler.seed);
    scores.reserve(picked.size());
    auto next = picked.begin();
    std::uint64_t block_start = 0;
    for (std::size_t i = 0; i < lists.size() && next != picked.end(); ++i) {
        for (std::size_t j = i + 1; j < lists.size() && next != picked.end(); ++j) {
            const std::uint64_t mj = lists[j]->size();
            const std::uint64_t block_end = block_start + lists[i]->size() * mj;
            for (; next != picked.end() && *next < block_end; ++next) {
                const std::uint64_t offset = *next - block_start;
                scores.push_back(similarity((*lists[i])[offset / mj], (*lists[j])[offset % mj], kind));
            }
            block_start = block_end;
        }
    }
    return scores;
}

}  // namespace

PairScores score_pairs(const EmbeddingSet& set, const PairSampler& sampler, Similarity kind) {
    return PairScores{genuine_scores(set, kind), impostor_scores(set, sampler, kind)};
}

double roc_auc(const PairScores& scores) {
    if (scores.genuine.empty() || scores.impostor.empty())
        throw PawError(ErrorKind::EmptyClass, "AUC needs at least one genuine and one impostor score (got " +
                                                  std::to_string(scores.genuine.size()) + " genuine, " +
                                                  std::to_string(scores.impostor.size()) + " impostor)");
    std::vector<double> impostor = scores.impostor;
    std::sort(impostor.begin(), impostor.end());
    // twice the Mann-Whitney U, kept integral
    std::uint64_t twice_u = 0;
    for (double g : scores.genuine) {
        const auto lo = std::lower_bound(impostor.begin(), impostor.end(), g);
        const auto hi = std::upper_bound(lo, impostor.end(), g);
        twice_u += 2 * static_cast<std::uint64_t>(lo - impostor.begin()) + static_cast<std::uint64_t>(hi - lo);
    }
    return static_cast<double>(twice_u) /
           (2.0 * static_cast<double>(scores.genuine.size()) * static_cast<double>(scores.impostor.size()));
}

std::vector<RocPoint> roc_curve(const PairScores& scores) {
    if (scores.genuine.empty() || scores.impostor.empty())
        throw PawError(ErrorKind::EmptyClass, "ROC needs both genuine and impostor scores");
    std::vector<std::pair<double, bool>> labelled;
    labelled.reserve(scores.genuine.size() + scores.impostor.size());
    for (double s : scores.genuine) labelled.emplace_back(s, true);
    for (double s : scores.impostor) labelled.emplace_back(s, false);
    std::sort(labelled.begin(), labelled.end(), [](const auto& a, const auto& b) { return a.first > b.first; });

    const double g = static_cast<double>(scores.genuine.size());
    const double n = static_cast<double>(scores.impostor.size());
    std::vector<RocPoint> curve{{0.0, 0.0}};
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < labelled.size();) {
        const double threshold = labelled[i].first;
        for (; i < labelled.size() && labelled[i].first == threshold; ++i) (labelled[i].second ? tp : fp) += 1;
        curve.push_back({static_cast<double>(fp) / n, static_cast<double>(tp) / g});
    }
    return curve;
}

double trapezoid_area(const std::vector<RocPoint>& curve) {
    double area = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        area += (curve[i].fpr - curve[i - 1].fpr) * (curve[i].tpr + curve[i - 1].tpr) * 0.5;
    return area;
}

AucReport repeated_auc(const EmbeddingSet& set, int trials, std::uint64_t impostor_cap, std::uint64_t seed,
                       Similarity kind) {
    if (trials < 1) throw PawError(ErrorKind::InvalidArgument, "trials must be at least 1");
    AucReport report;
    report.trials = trials;
    report.seed = seed;
    report.impostor_cap = impostor_cap;
    report.counts = count_pairs(set);

    const std::vector<double> genuine = genuine_scores(set, kind);
    const bool sampled = impostor_cap != 0 && impostor_cap < report.counts.impostor;
    std::vector<double> all_impostors;
    if (!sampled) all_impostors = impostor_scores(set, {}, kind);

    for (int t = 0; t < trials; ++t) {
        PairScores scores;
        scores.genuine = genuine;
        scores.impostor = sampled ? impostor_scores(set, {impostor_cap, seed + static_cast<std::uint64_t>(t)}, kind)
                                  : all_impostors;
        report.impostor_used = scores.impostor.size();
        report.trial_aucs.push_back(roc_auc(scores));
    }

    double sum = 0.0;
    for (double a : report.trial_aucs) sum += a;
    report.mean = sum / trials;
    if (trials > 1) {
        double ss = 0.0;
        for (double a : report.trial_aucs) ss += (a - report.mean) * (a - report.mean);
        report.half_width = 1.96 * std::sqrt(ss / (trials - 1)) / std::sqrt(static_cast<double>(trials));
    }
    return report;
}

}  // namespace paw::eval
