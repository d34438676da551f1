#include "siegel/render.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "siegel/parallel.hpp"

namespace siegel {

cplx ImageBuffer::plane_from_pixel(double px, double py) const {
    double re = rect.re_min + (rect.re_max - rect.re_min) * (px / width);
    double im = rect.im_max - (rect.im_max - rect.im_min) * (py / height);
    return {re, im};
}

std::pair<double, double> ImageBuffer::pixel_from_plane(cplx z) const {
    double px = (z.real() - rect.re_min) / (rect.re_max - rect.re_min) * width;
    double py = (rect.im_max - z.imag()) / (rect.im_max - rect.im_min) * height;
    return {px, py};
}

cplx ImageBuffer::pixel_center(int i, int j) const {
    return plane_from_pixel(i + 0.5, j + 0.5);
}

namespace {

ImageBuffer make_buffer(Rect rect, int w, int h) {
    if (!rect.well_ordered()) throw std::invalid_argument("render: rect must be well ordered");
    if (w < 1 || h < 1) throw std::invalid_argument("render: empty raster");
    ImageBuffer img;
    img.width = w;
    img.height = h;
    img.rect = rect;
    img.tags.assign(std::size_t(w) * h, PixelClass::Undetermined);
    img.shade.assign(std::size_t(w) * h, 0.0f);
    return img;
}

void for_each_tile(ImageBuffer& img, int tile, int threads,
                   const std::function<void(int, int)>& pixel_fn) {
    int tx = (img.width + tile - 1) / tile;
    int ty = (img.height + tile - 1) / tile;
    parallel_for(std::size_t(tx) * ty, threads, [&](std::size_t t) {
        int bx = int(t) % tx, by = int(t) / tx;
        for (int j = by * tile; j < std::min((by + 1) * tile, img.height); ++j)
            for (int i = bx * tile; i < std::min((bx + 1) * tile, img.width); ++i) pixel_fn(i, j);
    });
}

float step_shade(std::size_t step, std::size_t budget) {
    return float(std::log1p(double(step)) / std::log1p(double(budget)));
}

}  // namespace

ImageBuffer render_param_plane(const RotationNumber& theta, Rect rect, int w, int h,
                               const RenderOptions& opts) {
    ImageBuffer img = make_buffer(rect, w, h);

    // Pixel containing alpha = 0, if any, is masked out.
    auto [px0, py0] = img.pixel_from_plane(cplx(0.0, 0.0));
    int mi = int(std::floor(px0)), mj = int(std::floor(py0));
    bool has_mask = px0 >= 0 && px0 < w && py0 >= 0 && py0 < h;

    ClassifyOptions copts;
    copts.orbit_n = opts.budget;
    copts.series_order = opts.series_order;
    copts.trap_fraction = opts.trap_fraction;
    copts.curve.run_simplicity = false;  // pixel kernels skip the O(N) sweep

    for_each_tile(img, opts.tile, opts.threads, [&](int i, int j) {
        std::size_t idx = std::size_t(j) * w + i;
        if (has_mask && i == mi && j == mj) {
            img.tags[idx] = PixelClass::Masked;
            return;
        }
        cplx alpha = img.pixel_center(i, j);
        if (alpha == cplx(0.0, 0.0)) {
            img.tags[idx] = PixelClass::Masked;
            return;
        }
        Classification cl = classify_parameter(MapParams(theta, alpha), copts);
        switch (cl.verdict) {
            case Verdict::ExteriorType:
                img.tags[idx] = PixelClass::Exterior;
                img.shade[idx] = step_shade(cl.c2.hit.step, opts.budget);
                break;
            case Verdict::InteriorType:
                img.tags[idx] = PixelClass::Interior;
                img.shade[idx] = step_shade(cl.c1.hit.step, opts.budget);
                break;
            case Verdict::OnGamma:
                img.tags[idx] = PixelClass::OnGamma;
                break;
            case Verdict::Undetermined:
                img.tags[idx] = PixelClass::Undetermined;
                break;
        }
    });
    return img;
}

JuliaProbe julia_probe(const MapParams& p, const TrapDisk& trap0, const TrapDisk& trap_inf,
                       SpherePoint z, std::size_t max_steps) {
    for (std::size_t step = 0; step <= max_steps; ++step) {
        if (in_trap(trap0, z)) return {true, LimitCenter::at_zero, step};
        if (in_trap(trap_inf, z)) return {true, LimitCenter::at_infinity, step};
        if (step == max_steps) break;
        z = eval_f(p, z);
    }
    return {};
}

ImageBuffer render_julia(const MapParams& p, Rect rect, int w, int h,
                         const RenderOptions& opts) {
    ImageBuffer img = make_buffer(rect, w, h);

    auto lin0 =
        solve_linearizer(taylor_f2(p, LimitCenter::at_zero, opts.series_order), opts.series_order);
    auto lin_inf = solve_linearizer(taylor_f2(p, LimitCenter::at_infinity, opts.series_order),
                                    opts.series_order);
    TrapDisk trap0 = trap_disk(lin0, opts.trap_fraction);
    TrapDisk trap_inf = trap_disk(lin_inf, opts.trap_fraction);

    const std::size_t max_steps = 2 * opts.budget;
    for_each_tile(img, opts.tile, opts.threads, [&](int i, int j) {
        std::size_t idx = std::size_t(j) * w + i;
        JuliaProbe probe = julia_probe(p, trap0, trap_inf, SpherePoint::affine(img.pixel_center(i, j)),
                                       max_steps);
        if (!probe.hit) {
            img.tags[idx] = PixelClass::Julia;
            return;
        }
        // Even-step arrival in the 0-trap (or odd-step in the infinity trap)
        // means the pixel's component cycles with the Siegel disk at 0.
        bool zero_side = (probe.which == LimitCenter::at_zero) == (probe.step % 2 == 0);
        img.tags[idx] = zero_side ? PixelClass::FatouZero : PixelClass::FatouInf;
        img.shade[idx] = step_shade(probe.step, max_steps);
    });
    return img;
}

Palette Palette::defaults() {
    Palette p;
    p.base[int(PixelClass::Exterior)] = {36, 62, 158};      // deep blue
    p.base[int(PixelClass::Interior)] = {248, 220, 120};    // light sand
    p.base[int(PixelClass::OnGamma)] = {0, 0, 0};
    p.base[int(PixelClass::Undetermined)] = {170, 64, 160}; // reserved magenta
    p.base[int(PixelClass::Masked)] = {0, 0, 0};
    p.base[int(PixelClass::FatouZero)] = {70, 120, 210};
    p.base[int(PixelClass::FatouInf)] = {235, 170, 80};
    p.base[int(PixelClass::Julia)] = {8, 8, 8};
    p.shade_depth = 0.55;
    return p;
}

Palette Palette::identity() {
    Palette p = defaults();
    p.shade_depth = 0.0;
    return p;
}

std::vector<std::uint8_t> ppm_bytes(const ImageBuffer& img, const Palette& pal) {
    char header[64];
    int n = std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", img.width, img.height);
    std::vector<std::uint8_t> out(header, header + n);
    out.reserve(out.size() + std::size_t(img.width) * img.height * 3);
    for (std::size_t idx = 0; idx < img.tags.size(); ++idx) {
        const auto& base = pal.base[int(img.tags[idx])];
        double f = 1.0 - pal.shade_depth * double(img.shade[idx]);
        for (int c = 0; c < 3; ++c)
            out.push_back(std::uint8_t(std::lround(base[c] * f)));
    }
    return out;
}

void write_ppm(const ImageBuffer& img, const Palette& pal, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("write_ppm: cannot open " + path);
    auto bytes = ppm_bytes(img, pal);
    f.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
    if (!f) throw std::runtime_error("write_ppm: write failed for " + path);
}

std::array<std::size_t, kPixelClassCount> class_counts(const ImageBuffer& img) {
    std::array<std::size_t, kPixelClassCount> counts{};
    for (PixelClass t : img.tags) ++counts[int(t)];
    return counts;
}

}  // namespace siegel
