#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paw/error.hpp"
#include "paw/eval.hpp"
#include "paw/fan.hpp"
#include "paw/geometry.hpp"
#include "paw/maskops.hpp"
#include "paw/pipeline.hpp"
#include "paw/warp.hpp"

namespace py = pybind11;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using F64Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

paw::Image to_image(const U8Array& a) {
    if (a.ndim() != 2 && !(a.ndim() == 3 && a.shape(2) == 3))
        throw paw::PawError(paw::ErrorKind::InvalidArgument, "image must be HxW or HxWx3 uint8");
    const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
    const int c = a.ndim() == 3 ? 3 : 1;
    std::vector<std::uint8_t> data(a.data(), a.data() + a.size());
    return paw::Image(w, h, c, std::move(data));
}

py::array from_image(const paw::Image& img) {
    std::vector<py::ssize_t> shape{img.height(), img.width()};
    if (img.channels() == 3) shape.push_back(3);
    U8Array out(shape);
    std::memcpy(out.mutable_data(), img.data().data(), img.data().size());
    return std::move(out);
}

paw::BinaryMask to_mask(const py::array& input) {
    const U8Array a = py::cast<U8Array>(input.attr("astype")("uint8"));
    if (a.ndim() != 2) throw paw::PawError(paw::ErrorKind::InvalidArgument, "mask must be a 2-D array");
    paw::BinaryMask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    auto r = a.unchecked<2>();
    for (py::ssize_t y = 0; y < a.shape(0); ++y)
        for (py::ssize_t x = 0; x < a.shape(1); ++x) m.set(static_cast<int>(x), static_cast<int>(y), r(y, x) != 0);
    return m;
}

py::array from_mask(const paw::BinaryMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    auto w = out.mutable_unchecked<2>();
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) w(y, x) = m.get(x, y);
    return std::move(out);
}

std::vector<paw::Point2> to_points(const F64Array& a) {
    if (a.ndim() != 2 || a.shape(1) != 2) throw paw::PawError(paw::ErrorKind::InvalidArgument, "points must be Nx2");
    std::vector<paw::Point2> pts;
    auto r = a.unchecked<2>();
    for (py::ssize_t i = 0; i < a.shape(0); ++i) pts.push_back({r(i, 0), r(i, 1)});
    return pts;
}

F64Array from_points(const std::vector<paw::Point2>& pts) {
    F64Array out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
    auto w = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < pts.size(); ++i) w(i, 0) = pts[i].x, w(i, 1) = pts[i].y;
    return out;
}

py::tuple from_point(paw::Point2 p) { return py::make_tuple(p.x, p.y); }

paw::PipelineConfig make_config(int samples, int anchors, int patch_size, int grid, int canvas, int threads) {
    paw::PipelineConfig c;
    c.samples = samples, c.anchors = anchors, c.patch_size = patch_size;
    c.grid = grid, c.canvas = canvas, c.threads = threads;
    return c;
}

paw::eval::EmbeddingSet to_embedding_set(const py::dict& subjects) {
    std::optional<paw::eval::EmbeddingSet> set;
    for (const auto& [key, value] : subjects) {
        const F64Array arr = py::cast<F64Array>(value);
        if (arr.ndim() != 2) throw paw::PawError(paw::ErrorKind::InvalidArgument, "embeddings must be 2-D per subject");
        if (!set) set.emplace(static_cast<std::size_t>(arr.shape(1)));
        auto r = arr.unchecked<2>();
        for (py::ssize_t i = 0; i < arr.shape(0); ++i) {
            paw::eval::Embedding e(static_cast<std::size_t>(arr.shape(1)));
            for (py::ssize_t j = 0; j < arr.shape(1); ++j) e[j] = r(i, j);
            set->add(py::str(key), std::move(e));
        }
    }
    if (!set) throw paw::PawError(paw::ErrorKind::EmptyClass, "no subjects");
    return *std::move(set);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Anatomy-aware patch warping and verification evaluation";

    static py::exception<paw::PawError> exc(m, "PawError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const paw::PawError& e) {
            py::object instance = py::handle(exc.ptr())(e.what());
            instance.attr("kind") = std::string(paw::kind_name(e.kind()));
            instance.attr("stage") = e.stage();
            PyErr_SetObject(exc.ptr(), instance.ptr());
        }
    });

    // maskops
    m.def("binarize", [](const U8Array& img, int threshold) {
        return from_mask(paw::binarize(to_image(img), static_cast<std::uint8_t>(threshold)));
    }, py::arg("image"), py::arg("threshold") = 128);
    m.def("normalize_mask", [](const py::array& mask, int size) { return from_mask(paw::normalize_mask(to_mask(mask), size)); },
          py::arg("mask"), py::arg("size") = 112);
    m.def("normalize_image", [](const U8Array& img, int w, int h) { return from_image(paw::normalize_image(to_image(img), w, h)); },
          py::arg("image"), py::arg("width") = 112, py::arg("height") = 112);
    m.def("mask_union", [](const py::array& a, const py::array& b) { return from_mask(paw::mask_union(to_mask(a), to_mask(b))); });
    m.def("mask_intersect", [](const py::array& a, const py::array& b) { return from_mask(paw::mask_intersect(to_mask(a), to_mask(b))); });
    m.def("landmarks_to_mask", [](const F64Array& pts, int w, int h) {
        return from_mask(paw::landmarks_to_mask(to_points(pts), w, h));
    }, py::arg("points"), py::arg("width"), py::arg("height"));
    m.def("largest_component", [](const py::array& mask) { return from_mask(paw::largest_component(to_mask(mask))); });

    // geometry
    m.def("trace_boundary", [](const py::array& mask) { return from_points(paw::trace_boundary(to_mask(mask)).points); });
    m.def("convex_hull", [](const F64Array& pts) { return from_points(paw::convex_hull(to_points(pts)).vertices); });
    m.def("resample_closed", [](const F64Array& vertices, int count) {
        return from_points(paw::resample_closed(paw::ConvexPolygon{to_points(vertices)}, count));
    }, py::arg("vertices"), py::arg("count") = 200);
    m.def("canonical_reference", [](const F64Array& pts) { return paw::canonical_reference(to_points(pts)); });
    m.def("select_anchors", [](const F64Array& samples, std::size_t reference, int count) {
        return from_points(paw::select_anchors(to_points(samples), reference, count));
    }, py::arg("samples"), py::arg("reference"), py::arg("count") = 16);
    m.def("centroid", [](const F64Array& pts) { return from_point(paw::centroid(to_points(pts))); });
    m.def("polygon_area", [](const F64Array& pts) { return paw::polygon_area(to_points(pts)); });

    // fan
    m.def("order_anchors", [](const F64Array& anchors, std::pair<double, double> c) {
        return from_points(paw::order_anchors(to_points(anchors), {c.first, c.second}));
    });
    m.def("build_fan", [](const F64Array& ordered, std::pair<double, double> c) {
        auto fan = paw::build_triangles(to_points(ordered), {c.first, c.second});
        paw::pair_quadrilaterals(fan);
        py::dict d;
        d["ordered_anchors"] = from_points(fan.ordered_anchors);
        d["centroid"] = from_point(fan.centroid);
        d["triangles"] = fan.triangles;
        d["quads"] = fan.quads;
        return d;
    }, "Triangles (0, i, i+1) and sliding-window quads (i, i+1, i+2, 0); index 0 is the centroid");

    // warp
    m.def("solve_affine", [](const F64Array& src, const F64Array& dst) {
        const auto s = to_points(src), d = to_points(dst);
        if (s.size() != 3 || d.size() != 3) throw paw::PawError(paw::ErrorKind::InvalidArgument, "need 3x2 arrays");
        const auto map = paw::solve_affine({s[0], s[1], s[2]}, {d[0], d[1], d[2]});
        F64Array out({2, 3});
        std::memcpy(out.mutable_data(), map.m.data(), 6 * sizeof(double));
        return out;
    });
    m.def("warp_quad_to_patch", [](const U8Array& img, const F64Array& quad, int size) {
        const auto q = to_points(quad);
        if (q.size() != 4) throw paw::PawError(paw::ErrorKind::InvalidArgument, "quad must be 4x2 (Pi, Pi+1, Pi+2, P0)");
        return from_image(paw::warp_quad_to_patch(to_image(img), {q[0], q[1], q[2], q[3]}, size));
    }, py::arg("image"), py::arg("quad"), py::arg("size") = 28);
    m.def("stitch", [](const std::vector<U8Array>& patches, int grid) {
        std::vector<paw::Image> imgs;
        for (const auto& p : patches) imgs.push_back(to_image(p));
        return from_image(paw::stitch(imgs, grid));
    }, py::arg("patches"), py::arg("grid") = 4);
    m.def("slice", [](const U8Array& canvas, int grid) {
        py::list out;
        for (const auto& p : paw::slice(to_image(canvas), grid)) out.append(from_image(p));
        return out;
    }, py::arg("canvas"), py::arg("grid") = 4);

    m.def("warp_pipeline", [](const U8Array& img, const py::array& mask, int samples, int anchors, int patch_size, int grid,
                              int canvas, int threads) {
        const auto config = make_config(samples, anchors, patch_size, grid, canvas, threads);
        const paw::Image image = to_image(img);
        const paw::BinaryMask region = to_mask(mask);
        paw::Image out;
        {
            py::gil_scoped_release release;
            out = paw::warp_pipeline(image, region, config);
        }
        return from_image(out);
    }, py::arg("image"), py::arg("mask"), py::arg("samples") = 200, py::arg("anchors") = 16, py::arg("patch_size") = 28,
       py::arg("grid") = 4, py::arg("canvas") = 112, py::arg("threads") = 1);

    m.def("run_pipeline", [](const U8Array& img, const py::array& mask, int samples, int anchors, int patch_size, int grid,
                             int canvas) {
        const auto t = paw::run_pipeline(to_image(img), to_mask(mask),
                                         make_config(samples, anchors, patch_size, grid, canvas, 1));
        py::dict d;
        d["mask"] = from_mask(t.region);
        d["contour"] = from_points(t.contour.points);
        d["hull"] = from_points(t.hull.vertices);
        d["samples"] = from_points(t.samples);
        d["reference"] = t.reference;
        d["anchors"] = from_points(t.anchors);
        d["centroid"] = from_point(t.centroid);
        d["ordered_anchors"] = from_points(t.fan.ordered_anchors);
        d["quads"] = t.fan.quads;
        py::list patches;
        for (const auto& p : t.patches) patches.append(from_image(p));
        d["patches"] = patches;
        d["canvas"] = from_image(t.canvas);
        return d;
    }, py::arg("image"), py::arg("mask"), py::arg("samples") = 200, py::arg("anchors") = 16, py::arg("patch_size") = 28,
       py::arg("grid") = 4, py::arg("canvas") = 112);

    // eval
    m.def("count_pairs", [](const std::vector<std::size_t>& per_subject) {
        const auto c = paw::eval::count_pairs(per_subject);
        return py::make_tuple(c.genuine, c.impostor);
    }, py::arg("images_per_subject"));
    m.def("roc_auc", [](const std::vector<double>& genuine, const std::vector<double>& impostor) {
        return paw::eval::roc_auc({genuine, impostor});
    });
    m.def("repeated_auc", [](const py::dict& subjects, int trials, std::uint64_t cap, std::uint64_t seed, bool cosine) {
        const auto set = to_embedding_set(subjects);
        const auto r = paw::eval::repeated_auc(set, trials, cap, seed,
                                               cosine ? paw::eval::Similarity::Cosine : paw::eval::Similarity::Dot);
        py::dict d;
        d["trial_aucs"] = r.trial_aucs;
        d["mean"] = r.mean;
        d["half_width"] = r.half_width;
        d["trials"] = r.trials;
        d["seed"] = r.seed;
        d["genuine_pairs"] = r.counts.genuine;
        d["impostor_pairs"] = r.counts.impostor;
        return d;
    }, py::arg("subjects"), py::arg("trials") = 5, py::arg("impostor_cap") = 0, py::arg("seed") = 0,
       py::arg("cosine") = false);
}
