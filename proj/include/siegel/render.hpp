#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "siegel/boundary.hpp"

namespace siegel {

enum class PixelClass : std::uint8_t {
    Exterior = 0,
    Interior,
    OnGamma,
    Undetermined,
    Masked,
    FatouZero,
    FatouInf,
    Julia,
};
constexpr int kPixelClassCount = 8;

struct Rect {
    double re_min = 0, re_max = 0, im_min = 0, im_max = 0;
    bool well_ordered() const { return re_min < re_max && im_min < im_max; }
};

// Row-major pixel raster, top-left origin (row 0 is the top of the rectangle,
// i.e. the largest imaginary part). Each pixel carries one class tag and one
// scalar shade in [0,1].
struct ImageBuffer {
    int width = 0, height = 0;
    Rect rect;
    std::vector<PixelClass> tags;
    std::vector<float> shade;

    // px in [0,width], py in [0,height]; corners map to rect corners.
    cplx plane_from_pixel(double px, double py) const;
    std::pair<double, double> pixel_from_plane(cplx z) const;
    cplx pixel_center(int i, int j) const;  // column i, row j

    PixelClass tag_at(int i, int j) const { return tags[std::size_t(j) * width + i]; }
};

struct RenderOptions {
    std::size_t budget = 20000;  // f^2 steps per critical orbit (param plane),
                                 // half the f-step budget for Julia renders
    int series_order = 128;
    double trap_fraction = 0.5;
    int threads = 0;
    int tile = 32;
};

// Parameter-plane raster: per pixel alpha, the classifier verdict, shaded by
// the trap-entry time of the off-boundary critical orbit. The pixel holding
// alpha = 0 is masked. Curve simplicity checks are skipped per pixel.
ImageBuffer render_param_plane(const RotationNumber& theta, Rect rect, int w, int h,
                               const RenderOptions& opts = {});

struct JuliaProbe {
    bool hit = false;
    LimitCenter which = LimitCenter::at_zero;
    std::size_t step = 0;
};

// First trap hit of the forward f-orbit (single steps, not f^2).
JuliaProbe julia_probe(const MapParams& p, const TrapDisk& trap0, const TrapDisk& trap_inf,
                       SpherePoint z, std::size_t max_steps);

// Dynamical-plane raster: pixels are tagged by which Siegel cycle side their
// orbit lands in, decided by the first trap hit and its step parity; pixels
// with no hit within 2*budget steps are tagged Julia.
ImageBuffer render_julia(const MapParams& p, Rect rect, int w, int h,
                         const RenderOptions& opts = {});

struct Palette {
    std::array<std::array<std::uint8_t, 3>, kPixelClassCount> base;
    double shade_depth = 0.55;  // luminance factor spans [1 - depth, 1]

    static Palette defaults();
    static Palette identity();  // base colors only, shade ignored
};

std::vector<std::uint8_t> ppm_bytes(const ImageBuffer& img, const Palette& pal);
void write_ppm(const ImageBuffer& img, const Palette& pal, const std::string& path);

std::array<std::size_t, kPixelClassCount> class_counts(const ImageBuffer& img);

}  // namespace siegel
