#include "siegel/cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>

#include <CLI11.hpp>
#include <json.hpp>

#include "siegel/gamma.hpp"
#include "siegel/render.hpp"

using json = nlohmann::json;

namespace siegel::cli {

cplx parse_complex(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("empty complex literal");
    std::string s = text;
    bool imag_tail = s.back() == 'i' || s.back() == 'I';
    if (imag_tail) s.pop_back();

    // Split before the sign of the second component, skipping exponent signs
    // and the leading sign.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        char c = s[k];
        if ((c == '+' || c == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
            split = k;
            break;
        }
    }

    auto to_double = [&](const std::string& part) {
        if (part.empty() || part == "+" || part == "-")
            return part == "-" ? -1.0 : 1.0;  // bare "i", "+i", "-i"
        std::size_t used = 0;
        double v = std::stod(part, &used);
        if (used != part.size()) throw std::invalid_argument("bad complex literal: " + text);
        return v;
    };

    try {
        if (!imag_tail) {
            if (split != std::string::npos)
                throw std::invalid_argument("bad complex literal: " + text);
            return {to_double(s), 0.0};
        }
        if (split == std::string::npos) return {0.0, to_double(s)};
        return {to_double(s.substr(0, split)), to_double(s.substr(split))};
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad complex literal: " + text);
    }
}

std::string format_complex(cplx z) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
    return buf;
}

RotationNumber parse_theta_cf(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("theta spec must be pre:period, e.g. 20:1 or :1");
    auto parse_list = [&](const std::string& part) {
        std::vector<int> out;
        std::size_t pos = 0;
        while (pos < part.size()) {
            std::size_t comma = part.find(',', pos);
            std::string item = part.substr(pos, comma == std::string::npos ? comma : comma - pos);
            if (!item.empty()) out.push_back(std::stoi(item));
            if (comma == std::string::npos) break;
            pos = comma + 1;
        }
        return out;
    };
    return RotationNumber(parse_list(text.substr(0, colon)), parse_list(text.substr(colon + 1)));
}

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct ThetaOpt {
    bool golden = false;
    std::string cf;

    void attach(CLI::App* cmd) {
        cmd->add_flag("--theta-golden", golden, "rotation number (sqrt(5)-1)/2");
        cmd->add_option("--theta-cf", cf, "continued fraction quotients, pre:period");
    }
    RotationNumber resolve() const {
        bool have_cf = !cf.empty();
        if (golden == have_cf)
            throw CLI::ValidationError("theta", "give exactly one of --theta-golden / --theta-cf");
        return golden ? RotationNumber::golden() : parse_theta_cf(cf);
    }
    std::string describe() const { return golden ? "golden" : cf; }
};

cplx alpha_star(const RotationNumber& theta) {
    MapParams p1(theta, cplx(1.0, 0.0));
    CriticalPair cp = critical_points(p1);
    cplx f1c2 = (1.0 + p1.lambda * cp.c2) / (cp.c2 + cp.c2 * cp.c2);
    return cp.c1 / f1c2;
}

void write_json_file(const json& j, const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    f << j.dump(2) << "\n";
}

json rect_json(const Rect& r) { return json::array({r.re_min, r.re_max, r.im_min, r.im_max}); }

Rect parse_rect(const std::string& text) {
    Rect r;
    if (std::sscanf(text.c_str(), "%lf,%lf,%lf,%lf", &r.re_min, &r.re_max, &r.im_min,
                    &r.im_max) != 4 ||
        !r.well_ordered())
        throw CLI::ValidationError("--rect", "expected remin,remax,immin,immax with min < max");
    return r;
}

void parse_size(const std::string& text, int& w, int& h) {
    if (std::sscanf(text.c_str(), "%dx%d", &w, &h) != 2 || w < 1 || h < 1)
        throw CLI::ValidationError("--size", "expected WxH");
}

json evidence_json(const Classification& cl) {
    auto crit = [](const CritEvidence& ev) {
        json j;
        j["trap_entry"] = ev.trap_entry;
        if (ev.trap_entry) {
            j["entry_step"] = ev.hit.step;
            j["entered"] = ev.hit.which == LimitCenter::at_zero ? "0" : "inf";
        } else {
            j["curve_ok"] = ev.curve_ok;
        }
        return j;
    };
    json j;
    j["traps_ok"] = cl.traps_ok;
    if (!cl.traps_ok) j["trap_failure"] = cl.trap_failure;
    if (cl.traps_ok) {
        j["c1"] = crit(cl.c1);
        j["c2"] = crit(cl.c2);
        j["trap_radius_0"] = cl.trap0.radius;
        j["trap_radius_inf"] = cl.trap_inf.radius;
    }
    return j;
}

// ---- verify: table of desk-scale property checks -------------------------

struct Check {
    std::string name;
    bool pass = false;
    std::string detail;
};

double fd_multiplier_error(const MapParams& p) {
    const double h = 1e-4;
    cplx d = (chart_f2(p, LimitCenter::at_zero, cplx(h, 0.0)) -
              chart_f2(p, LimitCenter::at_zero, cplx(-h, 0.0))) /
             (2.0 * h);
    return std::abs(d - p.lambda);
}

std::vector<Check> run_verify(const RotationNumber& theta, bool quick, std::uint64_t seed,
                              std::size_t orbit_n, int order) {
    std::vector<Check> checks;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    auto rand_alpha = [&] {
        return std::polar(std::exp(std::log(0.3) + unit(rng) * (std::log(3.0) - std::log(0.3))),
                          kTwoPi * unit(rng));
    };
    auto rand_z = [&] {
        return std::polar(std::exp(std::log(0.1) + unit(rng) * (std::log(10.0) - std::log(0.1))),
                          kTwoPi * unit(rng));
    };
    char buf[160];

    {
        CriticalPair cp = critical_points(MapParams(theta, 1.0));
        cplx lambda = MapParams(theta, 1.0).lambda;
        double r1 = std::abs(cp.c1 + cp.c2 + 2.0 / lambda);
        double r2 = std::abs(cp.c1 * cp.c2 - 1.0 / lambda);
        double r3 = std::abs(tau(lambda, cp.c1) - cp.c2);
        double worst = std::max({r1, r2, r3});
        std::snprintf(buf, sizeof buf, "max residual %.2e (tol 1e-12)", worst);
        checks.push_back({"critical-identities", worst < 1e-12, buf});
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 100; ++k) {
            MapParams p(theta, rand_alpha());
            MapParams ps = symmetric_param(p);
            SpherePoint z = SpherePoint::affine(rand_z());
            worst = std::max(worst, chordal(tau(p.lambda, eval_f(p, z)),
                                            eval_f(ps, tau(p.lambda, z))));
        }
        std::snprintf(buf, sizeof buf, "max chordal %.2e (tol 1e-10)", worst);
        checks.push_back({"conjugacy-symmetry", worst < 1e-10, buf});
    }
    {
        double worst = 0.0;
        for (int k = 0; k < 10; ++k) worst = std::max(worst, fd_multiplier_error(MapParams(theta, rand_alpha())));
        std::snprintf(buf, sizeof buf, "max |fd - lambda| %.2e (tol 1e-6)", worst);
        checks.push_back({"multiplier", worst < 1e-6, buf});
    }
    {
        std::vector<SpherePoint> samples;
        for (int k = 0; k < 50; ++k)
            samples.push_back(SpherePoint::affine(std::polar(1.0, kTwoPi * k / 50.0)));
        auto inf6 = limit_convergence_check(theta, LimitCenter::at_infinity, 1e6, samples);
        auto inf3 = limit_convergence_check(theta, LimitCenter::at_infinity, 1e3, samples);
        auto zero6 = limit_convergence_check(theta, LimitCenter::at_zero, 1e-6, samples);
        bool ok = inf6.max_deviation < 1e-4 && zero6.max_deviation < 1e-4 &&
                  inf3.max_deviation > inf6.max_deviation;
        std::snprintf(buf, sizeof buf, "dev(1e6)=%.2e dev(1e-6)=%.2e (tol 1e-4)",
                      inf6.max_deviation, zero6.max_deviation);
        checks.push_back({"limit-maps", ok, buf});
    }
    {
        MapParams p(theta, 1.0);
        bool ok = false;
        double resid = NAN, radius = NAN;
        try {
            auto lin = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, 128), 128);
            radius = lin.radius_estimate;
            resid = linearizer_residual(p, lin, lin.radius_estimate / 3.0);
            ok = resid < 1e-8;
        } catch (const std::exception&) {
        }
        std::snprintf(buf, sizeof buf, "residual %.2e at rho=R/3, R=%.4f (tol 1e-8)", resid, radius);
        checks.push_back({"linearizer-residual", ok, buf});
    }
    {
        MapParams p(theta, 1.0);
        bool ok = false;
        double worst = 0.0;
        try {
            auto lin = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, 128), 128);
            TrapDisk trap = trap_disk(lin, 0.5);
            ok = true;
            for (int s = 0; s < 20 && ok; ++s) {
                SpherePoint z = SpherePoint::affine(
                    std::polar(trap.radius * (0.05 + 0.9 * unit(rng)), kTwoPi * unit(rng)));
                for (int it = 0; it < 10000; ++it) {
                    z = eval_f2(p, z);
                    double r = std::abs(z.u) / std::abs(z.v);
                    worst = std::max(worst, r / trap.radius);
                    if (r > 2.0 * trap.radius) {
                        ok = false;
                        break;
                    }
                }
            }
        } catch (const std::exception&) {
        }
        std::snprintf(buf, sizeof buf, "max |orbit|/r_trap = %.3f (limit 2)", worst);
        checks.push_back({"trap-invariance", ok, buf});
    }

    ClassifyOptions copts;
    copts.orbit_n = orbit_n;
    copts.series_order = order;

    const double theta_fig3 = 2.0 / (39.0 + std::sqrt(5.0));
    if (std::abs(theta.value() - theta_fig3) < 1e-12) {
        MapParams p(theta, parse_complex("0.30689283+0.11243024i"));
        CriticalPair cp = critical_points(p);
        SpherePoint z = SpherePoint::affine(cp.c1);
        for (int k = 0; k < 3; ++k) z = eval_f(p, z);
        double d = chordal(z, SpherePoint::affine(cp.c1));
        std::snprintf(buf, sizeof buf, "chordal |f^3(c1) - c1| = %.2e (tol 1e-5)", d);
        checks.push_back({"period3-anchor", d < 1e-5, buf});

        bool ok = false;
        std::string what = "trap construction failed";
        try {
            auto lin0 = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, order), order);
            auto lin_inf = solve_linearizer(taylor_f2(p, LimitCenter::at_infinity, order), order);
            std::vector<TrapDisk> traps{trap_disk(lin0, 0.5), trap_disk(lin_inf, 0.5)};
            OrbitTrace tr = orbit(p, SpherePoint::affine(cp.c2), orbit_n, traps);
            CurveOutcome out = boundary_curve(tr, theta.value(), LimitCenter::at_infinity);
            ok = out.ok();
            what = ok ? "c2 orbit closes a simple boundary loop around infinity"
                      : "c2 boundary curve failed";
        } catch (const std::exception& e) {
            what = e.what();
        }
        checks.push_back({"boundary-c2", ok, what});
    } else {
        Classification ext = classify_parameter(MapParams(theta, 3.0), copts);
        std::snprintf(buf, sizeof buf, "classify(3) = %s (want ExteriorType)",
                      to_string(ext.verdict));
        checks.push_back({"boundary-exterior", ext.verdict == Verdict::ExteriorType, buf});

        Classification in =
            classify_parameter(symmetric_param(MapParams(theta, 3.0)), copts);
        std::snprintf(buf, sizeof buf, "classify(iota(3)) = %s (want InteriorType)",
                      to_string(in.verdict));
        checks.push_back({"boundary-interior", in.verdict == Verdict::InteriorType, buf});
    }

    if (!quick) {
        cplx astar = alpha_star(theta);
        MapParams p(theta, astar);
        Classification cl = classify_parameter(p, copts);
        std::snprintf(buf, sizeof buf, "classify(alpha*) = %s", to_string(cl.verdict));
        checks.push_back({"alpha-star-on-gamma", cl.verdict == Verdict::OnGamma, buf});

        AngleResult ar = conformal_angle(p, copts);
        double a = ar.ok ? std::min(ar.m.A, kTwoPi - ar.m.A) : NAN;
        double defect = ar.ok ? angle_defect(ar.m, theta.value()) : NAN;
        std::snprintf(buf, sizeof buf, "|A| = %.2e (tol 1e-2), defect %.2e (tol 5e-3)", a, defect);
        checks.push_back({"alpha-star-angle", ar.ok && a < 1e-2 && defect < 5e-3, buf});
    }
    return checks;
}

// ---- subcommand runners ---------------------------------------------------

int run_classify(const ThetaOpt& th, const std::string& alpha_s, std::size_t orbit_n, int order,
                 const std::string& sidecar) {
    RotationNumber theta = th.resolve();
    MapParams p(theta, parse_complex(alpha_s));
    ClassifyOptions opts;
    opts.orbit_n = orbit_n;
    opts.series_order = order;
    Classification cl = classify_parameter(p, opts);

    json j;
    j["command"] = "classify";
    j["theta"] = theta.value();
    j["alpha"] = format_complex(p.alpha);
    j["verdict"] = to_string(cl.verdict);
    j["evidence"] = evidence_json(cl);
    j["orbit_n"] = orbit_n;
    j["order"] = order;
    std::cout << j.dump(2) << "\n";
    write_json_file(j, sidecar);
    return cl.verdict == Verdict::Undetermined ? 1 : 0;
}

int run_angle(const ThetaOpt& th, const std::string& alpha_s, std::size_t orbit_n, int order,
              const std::string& sidecar) {
    RotationNumber theta = th.resolve();
    MapParams p(theta, parse_complex(alpha_s));
    ClassifyOptions opts;
    opts.orbit_n = orbit_n;
    opts.series_order = order;
    AngleResult ar = conformal_angle(p, opts);

    json j;
    j["command"] = "angle";
    j["theta"] = theta.value();
    j["alpha"] = format_complex(p.alpha);
    j["N"] = orbit_n;
    if (ar.ok) {
        j["A"] = ar.m.A;
        j["A_tilde"] = ar.m.A_tilde;
        j["match_error"] = ar.m.match_error;
    } else {
        j["error"] = ar.fail_reason;
    }
    std::cout << j.dump(2) << "\n";
    write_json_file(j, sidecar);
    return ar.ok ? 0 : 1;
}

int run_trace_boundary(const ThetaOpt& th, const std::string& alpha_s, int critical,
                       std::string center_s, std::size_t orbit_n, int order,
                       const std::string& out, const std::string& sidecar) {
    RotationNumber theta = th.resolve();
    MapParams p(theta, parse_complex(alpha_s));
    if (center_s.empty()) center_s = critical == 1 ? "0" : "inf";
    LimitCenter center = center_s == "inf" ? LimitCenter::at_infinity : LimitCenter::at_zero;

    auto lin0 = solve_linearizer(taylor_f2(p, LimitCenter::at_zero, order), order);
    auto lin_inf = solve_linearizer(taylor_f2(p, LimitCenter::at_infinity, order), order);
    std::vector<TrapDisk> traps{trap_disk(lin0, 0.5), trap_disk(lin_inf, 0.5)};

    CriticalPair cp = critical_points(p);
    OrbitTrace tr = orbit(p, SpherePoint::affine(critical == 1 ? cp.c1 : cp.c2), orbit_n, traps);
    CurveOutcome res = boundary_curve(tr, theta.value(), center);

    json j;
    j["command"] = "trace-boundary";
    j["theta"] = theta.value();
    j["alpha"] = format_complex(p.alpha);
    j["critical"] = critical;
    j["center"] = center_s;
    j["orbit_n"] = orbit_n;
    j["out"] = out;

    if (!res.ok()) {
        j["error"] = int(res.fail);
        std::cerr << "boundary curve failed (reason " << int(res.fail) << ")\n";
        write_json_file(j, sidecar);
        return 1;
    }
    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot open " + out);
    f << "n,frac_ntheta,re_w,im_w\n";
    char line[128];
    for (const auto& nd : res.curve->nodes) {
        std::snprintf(line, sizeof line, "%zu,%.17g,%.17g,%.17g\n", nd.n, nd.angle, nd.w.real(),
                      nd.w.imag());
        f << line;
    }
    j["points"] = res.curve->nodes.size();
    j["winding"] = res.curve->winding;
    write_json_file(j, sidecar);
    return 0;
}

int run_trace_gamma(const ThetaOpt& th, int rays, double tol, double t_lo, double t_hi,
                    std::size_t orbit_n, int order, int threads, bool skip_verify,
                    const std::string& out_base) {
    RotationNumber theta = th.resolve();
    TraceOptions topts;
    topts.rays = rays;
    topts.threads = threads;
    topts.ray.tol = tol;
    topts.ray.t_lo = t_lo;
    topts.ray.t_hi = t_hi;
    topts.ray.classify.orbit_n = orbit_n;
    topts.ray.classify.series_order = order;

    GammaCurve curve = trace_gamma(theta, topts);

    std::string csv_path = out_base + ".csv";
    std::ofstream f(csv_path);
    if (!f) throw std::runtime_error("cannot open " + csv_path);
    f << "phi,re_alpha,im_alpha,A,bracket_width\n";
    char line[160];
    for (const auto& rec : curve.records) {
        std::snprintf(line, sizeof line, "%.17g,%.17g,%.17g,%.17g,%.17g\n", rec.phi,
                      rec.alpha.real(), rec.alpha.imag(), rec.angle_ok ? rec.A : NAN, rec.width);
        f << line;
    }

    json j;
    j["command"] = "trace-gamma";
    j["theta"] = theta.value();
    j["rays"] = rays;
    j["tol"] = tol;
    j["t_lo"] = t_lo;
    j["t_hi"] = t_hi;
    j["orbit_n"] = orbit_n;
    j["order"] = order;
    j["csv"] = csv_path;
    j["traced"] = curve.records.size();
    j["gaps"] = json::array();
    for (const auto& g : curve.gaps)
        j["gaps"].push_back({{"phi", g.phi},
                             {"reason", g.fail_reason},
                             {"undetermined_polluted", g.undetermined_polluted}});
    j["monotone_fraction"] = curve.monotone_fraction;

    bool ok = !curve.has_gaps();
    if (ok && !skip_verify) {
        VerifyOptions vopts;
        vopts.ray = topts.ray;
        vopts.threads = threads;
        GammaReport rep = verify_gamma(curve, vopts);
        json v;
        v["winding"] = rep.winding;
        v["winding_ok"] = rep.winding_ok;
        v["iota_hausdorff"] = rep.iota_hausdorff;
        v["iota_ok"] = rep.iota_ok;
        v["probes_ok"] = rep.probes_ok;
        v["monotone_fraction"] = rep.monotone_fraction;
        json probes = json::array();
        for (const auto& pc : rep.probes) {
            json pj;
            pj["phi"] = pc.phi;
            pj["outer"] = to_string(pc.outer);
            pj["inner"] = to_string(pc.inner);
            pj["ok"] = pc.ok;
            if (!pc.rescan_brackets.empty()) {
                pj["rescan_brackets"] = json::array();
                for (auto [a, b] : pc.rescan_brackets) pj["rescan_brackets"].push_back({a, b});
            }
            probes.push_back(pj);
        }
        v["probes"] = probes;
        v["pass"] = rep.pass();
        j["verify"] = v;
        ok = rep.pass();
    }
    write_json_file(j, out_base + ".json");
    std::cout << "traced " << curve.records.size() << "/" << rays << " rays -> " << csv_path
              << (ok ? " (ok)" : " (FAILED)") << "\n";
    return ok ? 0 : 1;
}

int run_param_plane(const ThetaOpt& th, const std::string& rect_s, const std::string& size_s,
                    std::size_t budget, int order, int threads, const std::string& out_base) {
    RotationNumber theta = th.resolve();
    Rect rect = parse_rect(rect_s);
    int w, h;
    parse_size(size_s, w, h);

    RenderOptions ropts;
    ropts.budget = budget;
    ropts.series_order = order;
    ropts.threads = threads;
    ImageBuffer img = render_param_plane(theta, rect, w, h, ropts);
    write_ppm(img, Palette::defaults(), out_base + ".ppm");

    auto counts = class_counts(img);
    json j;
    j["command"] = "param-plane";
    j["theta"] = theta.value();
    j["rect"] = rect_json(rect);
    j["size"] = {w, h};
    j["N"] = budget;
    j["order"] = order;
    j["ppm"] = out_base + ".ppm";
    j["class_counts"] = {{"ExteriorType", counts[0]}, {"InteriorType", counts[1]},
                         {"OnGamma", counts[2]},      {"Undetermined", counts[3]},
                         {"Masked", counts[4]}};
    write_json_file(j, out_base + ".json");
    std::cout << "wrote " << out_base << ".ppm (" << w << "x" << h << ")\n";
    return 0;
}

int run_julia(const ThetaOpt& th, const std::string& alpha_s, const std::string& rect_s,
              const std::string& size_s, std::size_t budget, int order, int threads,
              const std::string& out_base) {
    RotationNumber theta = th.resolve();
    MapParams p(theta, parse_complex(alpha_s));
    Rect rect = parse_rect(rect_s);
    int w, h;
    parse_size(size_s, w, h);

    RenderOptions ropts;
    ropts.budget = budget;
    ropts.series_order = order;
    ropts.threads = threads;
    ImageBuffer img = render_julia(p, rect, w, h, ropts);
    write_ppm(img, Palette::defaults(), out_base + ".ppm");

    auto counts = class_counts(img);
    json j;
    j["command"] = "julia";
    j["theta"] = theta.value();
    j["alpha"] = format_complex(p.alpha);
    j["rect"] = rect_json(rect);
    j["size"] = {w, h};
    j["N"] = budget;
    j["order"] = order;
    j["ppm"] = out_base + ".ppm";
    j["class_counts"] = {{"FatouZero", counts[5]}, {"FatouInf", counts[6]}, {"Julia", counts[7]}};
    write_json_file(j, out_base + ".json");
    std::cout << "wrote " << out_base << ".ppm (" << w << "x" << h << ")\n";
    return 0;
}

int run_dump_linearizer(const ThetaOpt& th, const std::string& alpha_s, const std::string& center_s,
                        int order, double fraction, const std::string& sidecar) {
    RotationNumber theta = th.resolve();
    MapParams p(theta, parse_complex(alpha_s));
    LimitCenter center = center_s == "inf" ? LimitCenter::at_infinity : LimitCenter::at_zero;
    auto lin = solve_linearizer(taylor_f2(p, center, order), order);

    json j;
    j["command"] = "dump-linearizer";
    j["theta"] = theta.value();
    j["alpha"] = format_complex(p.alpha);
    j["center"] = center_s;
    j["order"] = order;
    j["radius_estimate"] = lin.radius_estimate;
    j["radius_fit_ok"] = lin.radius_fit_ok;
    json coeffs = json::array();
    for (int n = 1; n <= lin.order(); ++n) coeffs.push_back({lin.b[n].real(), lin.b[n].imag()});
    j["coefficients"] = coeffs;
    try {
        TrapDisk trap = trap_disk(lin, fraction);
        j["trap"] = {{"fraction", fraction}, {"radius", trap.radius}};
    } catch (const std::exception& e) {
        j["trap"] = {{"error", e.what()}};
    }
    std::cout << j.dump(2) << "\n";
    write_json_file(j, sidecar);
    return 0;
}

int run_verify_cmd(const ThetaOpt& th, bool quick, std::uint64_t seed, std::size_t orbit_n,
                   int order, const std::string& sidecar) {
    RotationNumber theta = th.resolve();
    if (quick) orbit_n = std::min<std::size_t>(orbit_n, 4000);
    auto checks = run_verify(theta, quick, seed, orbit_n, order);

    bool all = true;
    json rows = json::array();
    std::printf("%-24s %-6s %s\n", "check", "result", "detail");
    for (const auto& c : checks) {
        all &= c.pass;
        std::printf("%-24s %-6s %s\n", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.detail.c_str());
        rows.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    }
    std::printf("verify: %s\n", all ? "all checks passed" : "FAILURES present");

    json j;
    j["command"] = "verify";
    j["theta"] = theta.value();
    j["quick"] = quick;
    j["seed"] = seed;
    j["orbit_n"] = orbit_n;
    j["order"] = order;
    j["checks"] = rows;
    j["pass"] = all;
    write_json_file(j, sidecar);
    return all ? 0 : 1;
}

}  // namespace

int dispatch(const std::vector<std::string>& args) {
    CLI::App app{"siegelpair: numerical explorer for the quadratic rational maps "
                 "alpha(1+e^{2 pi i theta} z)/(z+z^2) and their 2-cycle of Siegel disks"};
    app.require_subcommand(1);

    // classify
    auto* c_cmd = app.add_subcommand("classify", "critical-point configuration at alpha");
    ThetaOpt c_th;
    c_th.attach(c_cmd);
    std::string c_alpha;
    std::size_t c_orbit = 20000;
    int c_order = 128;
    std::string c_sidecar = "classify.config.json";
    c_cmd->add_option("--alpha", c_alpha, "parameter, a+bi")->required();
    c_cmd->add_option("--orbit-n", c_orbit, "f^2 steps per critical orbit (>= 2000)");
    c_cmd->add_option("--order", c_order, "linearizer series order (>= 32)");
    c_cmd->add_option("--sidecar", c_sidecar, "config sidecar path");

    // angle
    auto* a_cmd = app.add_subcommand("angle", "conformal angles A, A~ at an OnGamma alpha");
    ThetaOpt a_th;
    a_th.attach(a_cmd);
    std::string a_alpha;
    std::size_t a_orbit = 20000;
    int a_order = 128;
    std::string a_sidecar = "angle.config.json";
    a_cmd->add_option("--alpha", a_alpha, "parameter, a+bi")->required();
    a_cmd->add_option("--orbit-n", a_orbit, "boundary samples");
    a_cmd->add_option("--order", a_order, "linearizer series order");
    a_cmd->add_option("--sidecar", a_sidecar, "config sidecar path");

    // trace-boundary
    auto* b_cmd = app.add_subcommand("trace-boundary", "Siegel boundary polyline as CSV");
    ThetaOpt b_th;
    b_th.attach(b_cmd);
    std::string b_alpha, b_center, b_out = "boundary.csv", b_sidecar = "trace-boundary.config.json";
    int b_crit = 1, b_order = 128;
    std::size_t b_orbit = 20000;
    b_cmd->add_option("--alpha", b_alpha, "parameter, a+bi")->required();
    b_cmd->add_option("--critical", b_crit, "seed critical point, 1 or 2")
        ->check(CLI::IsMember({1, 2}));
    b_cmd->add_option("--center", b_center, "chart center, 0 or inf (default by seed)")
        ->check(CLI::IsMember({"0", "inf"}));
    b_cmd->add_option("--orbit-n", b_orbit, "orbit length (>= 2000)");
    b_cmd->add_option("--order", b_order, "linearizer series order");
    b_cmd->add_option("--out", b_out, "CSV output path");
    b_cmd->add_option("--sidecar", b_sidecar, "config sidecar path");

    // trace-gamma
    auto* g_cmd = app.add_subcommand("trace-gamma", "trace the critical locus in the alpha plane");
    ThetaOpt g_th;
    g_th.attach(g_cmd);
    int g_rays = 64, g_order = 128, g_threads = 0;
    double g_tol = 1e-3, g_tlo = 1.0 / 3.0, g_thi = 3.0;
    std::size_t g_orbit = 20000;
    bool g_skip_verify = false;
    std::string g_out = "gamma";
    g_cmd->add_option("--rays", g_rays, "ray count (>= 8)");
    g_cmd->add_option("--tol", g_tol, "bisection tolerance in radius");
    g_cmd->add_option("--t-lo", g_tlo, "inner bracket radius");
    g_cmd->add_option("--t-hi", g_thi, "outer bracket radius");
    g_cmd->add_option("--orbit-n", g_orbit, "f^2 steps per classification");
    g_cmd->add_option("--order", g_order, "linearizer series order");
    g_cmd->add_option("--threads", g_threads, "worker threads (0 = auto)");
    g_cmd->add_flag("--skip-verify", g_skip_verify, "skip the global property checks");
    g_cmd->add_option("--out", g_out, "output base name (.csv/.json)");

    // param-plane
    auto* p_cmd = app.add_subcommand("param-plane", "parameter-plane raster (PPM + sidecar)");
    ThetaOpt p_th;
    p_th.attach(p_cmd);
    std::string p_rect = "-2,2,-2.7,1.3", p_size = "200x185", p_out = "param-plane";
    std::size_t p_budget = 20000;
    int p_order = 128, p_threads = 0;
    p_cmd->add_option("--rect", p_rect, "remin,remax,immin,immax");
    p_cmd->add_option("--size", p_size, "WxH");
    p_cmd->add_option("--render-n", p_budget, "f^2 steps per critical orbit");
    p_cmd->add_option("--order", p_order, "linearizer series order");
    p_cmd->add_option("--threads", p_threads, "worker threads (0 = auto)");
    p_cmd->add_option("--out", p_out, "output base name (.ppm/.json)");

    // julia
    auto* j_cmd = app.add_subcommand("julia", "dynamical-plane raster (PPM + sidecar)");
    ThetaOpt j_th;
    j_th.attach(j_cmd);
    std::string j_alpha, j_rect = "-3,3,-3,3", j_size = "400x400", j_out = "julia";
    std::size_t j_budget = 20000;
    int j_order = 128, j_threads = 0;
    j_cmd->add_option("--alpha", j_alpha, "parameter, a+bi")->required();
    j_cmd->add_option("--rect", j_rect, "remin,remax,immin,immax");
    j_cmd->add_option("--size", j_size, "WxH");
    j_cmd->add_option("--render-n", j_budget, "orbit budget N (2N single-f steps)");
    j_cmd->add_option("--order", j_order, "linearizer series order");
    j_cmd->add_option("--threads", j_threads, "worker threads (0 = auto)");
    j_cmd->add_option("--out", j_out, "output base name (.ppm/.json)");

    // dump-linearizer
    auto* d_cmd = app.add_subcommand("dump-linearizer", "linearizer coefficients as JSON");
    ThetaOpt d_th;
    d_th.attach(d_cmd);
    std::string d_alpha, d_center = "0", d_sidecar = "dump-linearizer.config.json";
    int d_order = 128;
    double d_fraction = 0.5;
    d_cmd->add_option("--alpha", d_alpha, "parameter, a+bi")->required();
    d_cmd->add_option("--center", d_center, "chart center, 0 or inf")
        ->check(CLI::IsMember({"0", "inf"}));
    d_cmd->add_option("--order", d_order, "series order");
    d_cmd->add_option("--fraction", d_fraction, "trap fraction in (0, 0.6]");
    d_cmd->add_option("--sidecar", d_sidecar, "config sidecar path");

    // verify
    auto* v_cmd = app.add_subcommand("verify", "run the desk-scale property checks");
    ThetaOpt v_th;
    v_th.attach(v_cmd);
    bool v_quick = false;
    std::uint64_t v_seed = 20240901;
    std::size_t v_orbit = 20000;
    int v_order = 128;
    std::string v_sidecar = "verify.config.json";
    v_cmd->add_flag("--quick", v_quick, "reduced budgets, skip the slow checks");
    v_cmd->add_option("--seed", v_seed, "RNG seed for the randomized checks");
    v_cmd->add_option("--orbit-n", v_orbit, "orbit budget for boundary checks");
    v_cmd->add_option("--order", v_order, "linearizer series order");
    v_cmd->add_option("--sidecar", v_sidecar, "config sidecar path");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*c_cmd) return run_classify(c_th, c_alpha, c_orbit, c_order, c_sidecar);
        if (*a_cmd) return run_angle(a_th, a_alpha, a_orbit, a_order, a_sidecar);
        if (*b_cmd)
            return run_trace_boundary(b_th, b_alpha, b_crit, b_center, b_orbit, b_order, b_out,
                                      b_sidecar);
        if (*g_cmd)
            return run_trace_gamma(g_th, g_rays, g_tol, g_tlo, g_thi, g_orbit, g_order, g_threads,
                                   g_skip_verify, g_out);
        if (*p_cmd)
            return run_param_plane(p_th, p_rect, p_size, p_budget, p_order, p_threads, p_out);
        if (*j_cmd)
            return run_julia(j_th, j_alpha, j_rect, j_size, j_budget, j_order, j_threads, j_out);
        if (*d_cmd)
            return run_dump_linearizer(d_th, d_alpha, d_center, d_order, d_fraction, d_sidecar);
        if (*v_cmd) return run_verify_cmd(v_th, v_quick, v_seed, v_orbit, v_order, v_sidecar);
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

}  // namespace siegel::cli
