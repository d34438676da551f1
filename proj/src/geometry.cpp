#include "siegel/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace siegel {

namespace {

double cross(cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
}

bool on_segment(cplx p, cplx a, cplx b) {
    return std::min(a.real(), b.real()) <= p.real() && p.real() <= std::max(a.real(), b.real()) &&
           std::min(a.imag(), b.imag()) <= p.imag() && p.imag() <= std::max(a.imag(), b.imag());
}

struct Grid {
    double x0 = 0, y0 = 0, sx = 1, sy = 1;
    int g = 1;

    static Grid over(const std::vector<cplx>& pts, int cells) {
        Grid gr;
        double xlo = std::numeric_limits<double>::infinity(), xhi = -xlo;
        double ylo = xlo, yhi = -xlo;
        for (cplx p : pts) {
            xlo = std::min(xlo, p.real());
            xhi = std::max(xhi, p.real());
            ylo = std::min(ylo, p.imag());
            yhi = std::max(yhi, p.imag());
        }
        gr.g = std::clamp(cells, 1, 512);
        gr.x0 = xlo;
        gr.y0 = ylo;
        gr.sx = std::max((xhi - xlo) / gr.g, 1e-300);
        gr.sy = std::max((yhi - ylo) / gr.g, 1e-300);
        return gr;
    }

    int ix(double x) const { return std::clamp(int((x - x0) / sx), 0, g - 1); }
    int iy(double y) const { return std::clamp(int((y - y0) / sy), 0, g - 1); }
};

}  // namespace

int orientation(cplx a, cplx b, cplx c) {
    double v = cross(a, b, c);
    return (v > 0.0) - (v < 0.0);
}

bool segments_intersect(cplx a, cplx b, cplx c, cplx d) {
    int o1 = orientation(a, b, c);
    int o2 = orientation(a, b, d);
    int o3 = orientation(c, d, a);
    int o4 = orientation(c, d, b);
    if (o1 != o2 && o3 != o4) return true;
    if (o1 == 0 && on_segment(c, a, b)) return true;
    if (o2 == 0 && on_segment(d, a, b)) return true;
    if (o3 == 0 && on_segment(a, c, d)) return true;
    if (o4 == 0 && on_segment(b, c, d)) return true;
    return false;
}

bool polyline_simple(const std::vector<cplx>& pts) {
    const int n = int(pts.size());
    if (n < 4) return true;
    Grid gr = Grid::over(pts, int(std::ceil(std::sqrt(double(n)))));

    std::vector<std::vector<int>> cells(std::size_t(gr.g) * gr.g);
    auto seg_cells = [&](int i, int& cx0, int& cx1, int& cy0, int& cy1) {
        cplx a = pts[i], b = pts[(i + 1) % n];
        cx0 = gr.ix(std::min(a.real(), b.real()));
        cx1 = gr.ix(std::max(a.real(), b.real()));
        cy0 = gr.iy(std::min(a.imag(), b.imag()));
        cy1 = gr.iy(std::max(a.imag(), b.imag()));
    };
    for (int i = 0; i < n; ++i) {
        int cx0, cx1, cy0, cy1;
        seg_cells(i, cx0, cx1, cy0, cy1);
        for (int cy = cy0; cy <= cy1; ++cy)
            for (int cx = cx0; cx <= cx1; ++cx) cells[std::size_t(cy) * gr.g + cx].push_back(i);
    }

    auto adjacent = [n](int i, int j) {
        return i == j || (i + 1) % n == j || (j + 1) % n == i;
    };
    for (int cy = 0; cy < gr.g; ++cy) {
        for (int cx = 0; cx < gr.g; ++cx) {
            const auto& list = cells[std::size_t(cy) * gr.g + cx];
            for (std::size_t s = 0; s < list.size(); ++s) {
                for (std::size_t t = s + 1; t < list.size(); ++t) {
                    int i = list[s], j = list[t];
                    if (adjacent(i, j)) continue;
                    // Test each pair only in the first cell both overlap.
                    int ax0, ax1, ay0, ay1, bx0, bx1, by0, by1;
                    seg_cells(i, ax0, ax1, ay0, ay1);
                    seg_cells(j, bx0, bx1, by0, by1);
                    if (std::max(ax0, bx0) != cx || std::max(ay0, by0) != cy) continue;
                    if (segments_intersect(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]))
                        return false;
                }
            }
        }
    }
    return true;
}

int winding_number(const std::vector<cplx>& pts) {
    double total = 0.0;
    const int n = int(pts.size());
    for (int i = 0; i < n; ++i) {
        cplx a = pts[i], b = pts[(i + 1) % n];
        if (a == cplx(0.0, 0.0) || b == cplx(0.0, 0.0))
            throw std::invalid_argument("winding number: vertex at origin");
        double d = a.real() * b.real() + a.imag() * b.imag();
        double c = a.real() * b.imag() - a.imag() * b.real();
        total += std::atan2(c, d);
    }
    return int(std::lround(total / (2.0 * M_PI)));
}

double point_segment_dist(cplx p, cplx a, cplx b) {
    cplx ab = b - a;
    double len2 = std::norm(ab);
    if (len2 == 0.0) return std::abs(p - a);
    double t = std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
}

namespace {

double directed_hausdorff(const std::vector<cplx>& from, const std::vector<cplx>& to) {
    Grid gr = Grid::over(to, int(std::ceil(std::sqrt(double(to.size())))));
    std::vector<std::vector<int>> cells(std::size_t(gr.g) * gr.g);
    for (int i = 0; i < int(to.size()); ++i)
        cells[std::size_t(gr.iy(to[i].imag())) * gr.g + gr.ix(to[i].real())].push_back(i);

    auto cell_dist = [&](cplx p, int cx, int cy) {
        double dx = std::max({gr.x0 + cx * gr.sx - p.real(), p.real() - (gr.x0 + (cx + 1) * gr.sx), 0.0});
        double dy = std::max({gr.y0 + cy * gr.sy - p.imag(), p.imag() - (gr.y0 + (cy + 1) * gr.sy), 0.0});
        return std::hypot(dx, dy);
    };

    double worst = 0.0;
    for (cplx p : from) {
        int cx = gr.ix(p.real()), cy = gr.iy(p.imag());
        double best = std::numeric_limits<double>::infinity();
        for (int r = 0; r < gr.g; ++r) {
            double ring_lb = std::numeric_limits<double>::infinity();
            bool any = false;
            for (int y = cy - r; y <= cy + r; ++y) {
                if (y < 0 || y >= gr.g) continue;
                for (int x = cx - r; x <= cx + r; ++x) {
                    if (x < 0 || x >= gr.g) continue;
                    if (std::max(std::abs(x - cx), std::abs(y - cy)) != r) continue;
                    any = true;
                    double lb = cell_dist(p, x, y);
                    ring_lb = std::min(ring_lb, lb);
                    if (lb >= best) continue;
                    for (int idx : cells[std::size_t(y) * gr.g + x])
                        best = std::min(best, std::abs(p - to[idx]));
                }
            }
            if (!any || (r > 0 && ring_lb >= best && best < std::numeric_limits<double>::infinity()))
                break;
        }
        worst = std::max(worst, best);
    }
    return worst;
}

}  // namespace

double hausdorff_points(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("hausdorff: empty point set");
    return std::max(directed_hausdorff(a, b), directed_hausdorff(b, a));
}

double hausdorff_polylines(const std::vector<cplx>& a, const std::vector<cplx>& b) {
    if (a.size() < 2 || b.size() < 2) throw std::invalid_argument("hausdorff: degenerate polyline");
    auto directed = [](const std::vector<cplx>& from, const std::vector<cplx>& to) {
        double worst = 0.0;
        for (cplx p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < to.size(); ++i)
                best = std::min(best, point_segment_dist(p, to[i], to[(i + 1) % to.size()]));
            worst = std::max(worst, best);
        }
        return worst;
    };
    return std::max(directed(a, b), directed(b, a));
}

}  // namespace siegel
