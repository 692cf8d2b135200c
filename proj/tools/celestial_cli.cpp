#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "celestial/capacity.hpp"
#include "celestial/errors.hpp"
#include "celestial/hamiltonians.hpp"
#include "celestial/hill_orbits.hpp"
#include "celestial/inclusions.hpp"
#include "celestial/parallel.hpp"
#include "celestial/rkp_spectrum.hpp"
#include "celestial/systolic.hpp"

using namespace celestial;
using Json = nlohmann::ordered_json;

namespace {

int g_digits = 12;

std::string fixed(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", g_digits, v);
    return buf;
}

std::string sci(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", g_digits, v);
    return buf;
}

/// Energies within 1e-6 (relative) below a critical value are read as the critical value itself.
double snap_to_critical(ProblemKind kind, double c) {
    const double crit = critical_value(kind);
    if (c < crit && c >= crit * (1.0 - 1e-6)) return crit;
    return c;
}

DomainSpec parse_domain(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) throw ArgumentError("domain must look like kind:c, got '" + text + "'");
    const auto kind = parse_problem_kind(text.substr(0, colon));
    if (kind == ProblemKind::Kepler) throw ArgumentError("domain kind must be rkp or hill");
    double c = 0.0;
    try {
        std::size_t used = 0;
        c = std::stod(text.substr(colon + 1), &used);
        if (used != text.size() - colon - 1) throw std::invalid_argument("trailing");
    } catch (const std::logic_error&) {
        throw ArgumentError("cannot parse energy in '" + text + "'");
    }
    return {kind, snap_to_critical(kind, c)};
}

void require_level(ProblemKind kind, double c, bool strict) {
    const double crit = critical_value(kind);
    if (!std::isfinite(c) || c < crit || (strict && c == crit))
        throw DomainError("c = " + fixed(c) + " must be " + (strict ? "above" : "at least") + " the critical value " +
                          fixed(crit) + " of " + std::string(to_string(kind)));
}

std::string spectrum_csv(double c, double cutoff) {
    require_level(ProblemKind::RotatingKepler, c, true);
    std::ostringstream out;
    out << "c,family,k,l,N,action,cz_index,window_lo,window_hi\n";
    for (const auto& e : enumerate_spectrum(c, cutoff)) {
        out << fixed(c) << ',' << to_string(e.family) << ',';
        if (e.family == SpectrumEntry::Family::Torus) {
            const auto t = torus_orbit(e.k, e.l);
            out << e.k << ',' << e.l << ",," << fixed(e.action) << ',' << *e.cz_index << ',' << fixed(t.c_minus) << ','
                << fixed(t.c_plus) << '\n';
        } else {
            out << ",," << e.N << ',' << fixed(e.action) << ',';
            if (e.cz_index) out << *e.cz_index;
            out << ",,\n";
        }
    }
    return out.str();
}

std::string bounds_rows(double c) {
    std::ostringstream out;
    for (const auto& iv : spectral_gaps(c))
        out << fixed(c) << ',' << to_string(iv.label.family) << ',' << iv.label.N << ',' << fixed(iv.lo) << ','
            << fixed(iv.hi) << ',' << iv.cz_index << ',' << iv.P << '\n';
    return out.str();
}

std::vector<double> parse_sweep(const std::string& text) {
    double a = 0, b = 0, step = 0;
    char tail = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%lf%c", &a, &b, &step, &tail) != 3)
        throw ArgumentError("sweep must look like start:stop:step");
    if (!(step > 0.0) || !(b >= a)) throw ArgumentError("sweep needs step > 0 and stop >= start");
    const long n = static_cast<long>(std::floor((b - a) / step + 1e-9));
    if (n > 1000000) throw ArgumentError("sweep has too many points");
    std::vector<double> cs;
    for (long i = 0; i <= n; ++i) cs.push_back(a + i * step);
    return cs;
}

Json report_json(const DomainSpec& inner, const DomainSpec& outer, const InclusionReport& r) {
    auto domain = [](const DomainSpec& d) { return Json{{"kind", to_string(d.kind)}, {"c", fixed(d.c)}}; };
    Json trend = Json::array();
    for (double m : r.outer_ring_margins) trend.push_back(sci(m));
    return Json{{"inner", domain(inner)},
                {"outer", domain(outer)},
                {"holds", r.holds},
                {"worst_margin", sci(r.worst_margin)},
                {"kappa_min", fixed(r.kappa_min)},
                {"kappa_max", fixed(r.kappa_max)},
                {"samples", Json::array({r.p_samples, r.theta_samples})},
                {"criteria_disagreements", r.criteria_disagreements},
                {"worst_p", Json::array({fixed(r.worst_p[0]), fixed(r.worst_p[1])})},
                {"worst_theta", fixed(r.worst_theta)},
                {"outer_ring_margins", trend}};
}

Json state_json(const PhaseState& s) {
    return Json{{"q1", fixed(s.q1)}, {"q2", fixed(s.q2)}, {"p1", fixed(s.p1)}, {"p2", fixed(s.p2)}};
}

Json orbit_json(const PeriodicOrbit& o, bool with_samples) {
    Json j{{"problem", to_string(o.kind)},
           {"family", to_string(o.family)},
           {"c", fixed(o.c)},
           {"initial", state_json(o.initial)},
           {"period", fixed(o.period)},
           {"action", fixed(o.action)},
           {"energy_drift", sci(o.energy_drift)},
           {"crossing_residual", sci(o.crossing_residual)},
           {"closure_error", sci(o.closure_error)},
           {"action_form_gap", sci(o.action_form_gap)}};
    if (with_samples) {
        Json samples = Json::array();
        for (const auto& n : o.samples) {
            Json row = state_json(n.s);
            samples.push_back(Json{{"t", fixed(n.t)}, {"state", row}});
        }
        j["samples"] = samples;
    }
    return j;
}

Json volume_json(const VolumeResult& v) {
    Json j{{"method", to_string(v.method)},
           {"value", fixed(v.value)},
           {"error_estimate", sci(v.error_estimate)},
           {"samples_or_evals", v.samples_or_evals}};
    j["seed"] = v.seed ? Json(*v.seed) : Json(nullptr);
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    apply_thread_limit_from_env();
    CLI::App app{"Action spectra, capacity bounds, periodic orbits and contact volumes of the rotating Kepler and Hill lunar problems"};
    app.require_subcommand(1);
    std::string output;
    app.add_option("--digits", g_digits, "Digits after the decimal point")->check(CLI::Range(1, 17));
    app.add_option("--output,-o", output, "Write to this file instead of stdout");

    double sp_c = 0, sp_cutoff = 0;
    auto* sp = app.add_subcommand("spectrum", "Action spectrum of the rotating Kepler problem as CSV");
    sp->add_option("--c", sp_c, "Energy parameter (level -c)")->required();
    sp->add_option("--cutoff", sp_cutoff, "Largest action to list")->required();

    double bd_c = 0;
    std::string bd_sweep;
    auto* bd = app.add_subcommand("bounds", "Hill capacity intervals as CSV");
    auto* bd_c_opt = bd->add_option("--c", bd_c, "Energy parameter");
    auto* bd_sweep_opt = bd->add_option("--sweep", bd_sweep, "start:stop:step");
    bd_c_opt->excludes(bd_sweep_opt);
    bd->require_option(1);

    std::string vf_inner, vf_outer;
    int vf_np = 64, vf_ntheta = 256;
    double vf_pmax = 12.0;
    bool vf_strict = false;
    auto* vf = app.add_subcommand("verify", "Fiberwise inclusion check as JSON; exit 1 when it fails");
    vf->add_option("--inner", vf_inner, "kind:c of the smaller domain")->required();
    vf->add_option("--outer", vf_outer, "kind:c of the larger domain")->required();
    vf->add_option("--np", vf_np, "Momentum rings and angles per ring");
    vf->add_option("--ntheta", vf_ntheta, "Fiber directions");
    vf->add_option("--pmax", vf_pmax, "Momentum cutoff");
    vf->add_flag("--strict", vf_strict, "Require worst margin >= 0 with no tangency tolerance");

    std::string ob_problem = "hill", ob_family = "retrograde";
    double ob_c = 0, ob_tol = 1e-12;
    bool ob_no_samples = false;
    auto* ob = app.add_subcommand("orbit", "Symmetric periodic orbit as JSON");
    ob->add_option("--problem", ob_problem, "hill or rkp");
    ob->add_option("--family", ob_family, "retrograde or direct");
    ob->add_option("--c", ob_c, "Energy parameter")->required();
    ob->add_option("--tol", ob_tol, "Integrator tolerance");
    ob->add_flag("--no-samples", ob_no_samples, "Omit the trajectory samples");

    double sy_c = 0;
    std::string sy_method = "all";
    std::uint64_t sy_seed = 42;
    std::int64_t sy_n = 100000;
    auto* sy = app.add_subcommand("systolic", "Contact volume and systolic ratio as JSON");
    sy->add_option("--c", sy_c, "Energy parameter")->required();
    sy->add_option("--method", sy_method, "quadrature, closed, mc or all")
        ->check(CLI::IsMember({"quadrature", "closed", "mc", "all"}));
    sy->add_option("--seed", sy_seed, "Monte Carlo seed");
    sy->add_option("--n", sy_n, "Monte Carlo samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    int status = 0;
    std::string text;
    try {
        if (*sp) {
            text = spectrum_csv(sp_c, sp_cutoff);
        } else if (*bd) {
            std::vector<double> cs = bd_sweep.empty() ? std::vector<double>{bd_c} : parse_sweep(bd_sweep);
            text = "c,family,N,lo,hi,cz_index,P\n";
            for (double c : cs) {
                c = snap_to_critical(ProblemKind::HillLunar, c);
                require_level(ProblemKind::HillLunar, c, false);
                text += bounds_rows(c);
            }
        } else if (*vf) {
            const auto inner = parse_domain(vf_inner);
            const auto outer = parse_domain(vf_outer);
            require_level(inner.kind, inner.c, inner.kind == ProblemKind::RotatingKepler);
            require_level(outer.kind, outer.c, outer.kind == ProblemKind::RotatingKepler);
            const auto r = verify_fiber_inclusion(inner, outer, vf_np, vf_ntheta, vf_pmax,
                                                  vf_strict ? 0.0 : kTangencyTolerance);
            text = report_json(inner, outer, r).dump(2) + "\n";
            status = r.holds ? 0 : 1;
        } else if (*ob) {
            const auto kind = parse_problem_kind(ob_problem);
            if (kind == ProblemKind::Kepler) throw ArgumentError("orbit: problem must be hill or rkp");
            const auto family = parse_orbit_family(ob_family);
            require_level(kind, ob_c, true);
            Json j;
            if (kind == ProblemKind::HillLunar) {
                auto cfg = default_shooting_config(kind, family, ob_c);
                cfg.integrator_tol = ob_tol;
                const auto orbit = find_symmetric_orbit(kind, cfg);
                const OrbitClassLabel label{family, 1};
                const double lo = hill_lower_bound(ob_c, label);
                const double hi = hill_upper_bound(ob_c, label).value;
                j = orbit_json(orbit, !ob_no_samples);
                j["conjecture"] = Json{{"lo", fixed(lo)},
                                       {"hi", fixed(hi)},
                                       {"inside", lo <= orbit.action && orbit.action <= hi}};
            } else {
                auto cfg = default_shooting_config(kind, family, ob_c);
                cfg.integrator_tol = ob_tol;
                const auto orbit = find_symmetric_orbit(kind, cfg);
                const auto roots = circular_roots(ob_c);
                const double L = family == OrbitFamily::Retrograde ? roots.L_R : roots.L_D;
                j = orbit_json(orbit, !ob_no_samples);
                j["circular_reference"] = Json{{"radius", fixed(L * L)},
                                               {"action", fixed(2.0 * std::numbers::pi * std::abs(L))}};
            }
            text = j.dump(2) + "\n";
        } else if (*sy) {
            require_level(ProblemKind::RotatingKepler, sy_c, true);
            std::vector<VolumeResult> results;
            if (sy_method == "quadrature" || sy_method == "all") results.push_back(contact_volume_quadrature(sy_c));
            if (sy_method == "closed" || sy_method == "all") results.push_back(contact_volume_closed_form(sy_c));
            if (sy_method == "mc" || sy_method == "all") results.push_back(contact_volume_mc(sy_c, sy_n, sy_seed));
            const double sys = systole_rkp(sy_c);
            Json volumes = Json::array();
            Json ratios = Json::array();
            for (const auto& v : results) {
                volumes.push_back(volume_json(v));
                ratios.push_back(fixed(v.value / (sys * sys)));
            }
            text = Json{{"c", fixed(sy_c)}, {"systole", fixed(sys)}, {"volumes", volumes}, {"systolic_ratios", ratios}}
                       .dump(2) +
                   "\n";
        }
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 3;
    }

    if (output.empty()) {
        std::cout << text;
    } else {
        std::ofstream f(output, std::ios::binary);
        if (!f) {
            std::cerr << "error: cannot open " << output << '\n';
            return 2;
        }
        f << text;
    }
    return status;
}
