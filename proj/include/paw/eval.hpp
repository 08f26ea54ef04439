#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace paw::eval {

using Embedding = std::vector<double>;

// Per-subject embedding lists. Subjects iterate in sorted id order; vectors
// keep insertion order within a subject.
class EmbeddingSet {
public:
    explicit EmbeddingSet(std::size_t dim = 512) : dim_(dim) {}

    // Throws DimensionMismatch when the vector length differs from dim().
    void add(const std::string& subject_id, Embedding embedding);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t subject_count() const noexcept { return subjects_.size(); }
    std::size_t embedding_count() const noexcept;
    const std::map<std::string, std::vector<Embedding>>& subjects() const noexcept { return subjects_; }

    // Per-subject image counts in iteration order.
    std::vector<std::size_t> counts() const;

private:
    std::size_t dim_;
    std::map<std::string, std::vector<Embedding>> subjects_;
};

struct PairCounts {
    std::uint64_t genuine = 0;
    std::uint64_t impostor = 0;

    friend bool operator==(const PairCounts&, const PairCounts&) = default;
};

// sum_i C(M_i, 2) genuine and sum_{i<j} M_i M_j impostor pairs.
PairCounts count_pairs(const EmbeddingSet& set);
PairCounts count_pairs(const std::vector<std::size_t>& images_per_subject);

enum class Similarity { Dot, Cosine };

double similarity(const Embedding& a, const Embedding& b, Similarity kind = Similarity::Dot);

// impostor_cap == 0 keeps every impostor pair. Otherwise `impostor_cap`
// distinct impostor pairs are drawn without replacement using `seed`.
struct PairSampler {
    std::uint64_t impostor_cap = 0;
    std::uint64_t seed = 0;
};

struct PairScores {
    std::vector<double> genuine;
    std::vector<double> impostor;
};

PairScores score_pairs(const EmbeddingSet& set, const PairSampler& sampler = {},
                       Similarity kind = Similarity::Dot);

// Mann-Whitney statistic (#{g > i} + 0.5 #{g == i}) / (|G| |I|).
// Throws EmptyClass when either list is empty.
double roc_auc(const PairScores& scores);

struct RocPoint {
    double fpr = 0.0;
    double tpr = 0.0;
};

// Operating points from the strictest threshold down, (0,0) through (1,1).
// Tied scores move both rates at once, so the trapezoid area equals roc_auc.
std::vector<RocPoint> roc_curve(const PairScores& scores);
double trapezoid_area(const std::vector<RocPoint>& curve);

struct AucReport {
    std::vector<double> trial_aucs;
    double mean = 0.0;
    double half_width = 0.0;  // 1.96 * sample stddev / sqrt(trials)
    int trials = 0;
    std::uint64_t seed = 0;
    std::uint64_t impostor_cap = 0;
    PairCounts counts;              // full enumeration
    std::uint64_t impostor_used = 0;  // per trial after subsampling
};

// Trial t scores every genuine pair plus impostors drawn with seed + t.
AucReport repeated_auc(const EmbeddingSet& set, int trials = 5, std::uint64_t impostor_cap = 0,
                       std::uint64_t seed = 0, Similarity kind = Similarity::Dot);

}  // namespace paw::eval
