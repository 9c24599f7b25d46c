#pragma once

#include <fstream>
#include <optional>
#include <string>

#include <json.hpp>

#include "sp/coefficients.hpp"
#include "sp/manifold.hpp"
#include "sp/operator_spec.hpp"
#include "sp/stepper.hpp"

namespace sp {

using json = nlohmann::json;

struct GeometryConfig {
    std::string kind;
    Index n = 64, n2 = 16;
    double eps = 1.0 / 16.0;
    std::string grading = "geometric";
    std::string R_name = "linear";
    std::vector<double> R_poly;
    std::vector<Hole> holes;
    std::vector<std::pair<double, double>> points;
    std::string outer = "disk";
    double outer_size = 1.0;
    double collar = 0.05;
    double cluster = 0.0;
    double X = 1.0, Y = 1.0;
};

struct TabulatedCoefficients {
    std::vector<double> A00, A01, A11;
    std::vector<double> a1_re[2], a1_im[2];
    std::vector<double> a0_re, a0_im;
};

struct OperatorConfig {
    std::string preset = "laplace-beltrami";
    TabulatedCoefficients tabulated;
    double lambda = 2.0, lambda_prime = 0.0, omega = 0.0;
    std::string drift = "upwind";
    HestonParams heston;
    double a1_const = 0.0;
    cplx a0_const = 0.0;
    double witness_M = 0.0;        // 0 = geometric search
    double region_rho_max = 0.0;   // 0 = geometry default
    std::string route = "auto";    // omega | hlambda | auto
    double C1 = 1.99;
    std::string time_factor;       // "" | "none" | "sin" (frozen-coefficient stepping)
    double holder_exponent = 1.0;  // recorded time regularity of the coefficients
};

struct RunConfig {
    Scheme scheme = Scheme::ImplicitEuler;
    double dt = 5e-3, T = 0.5;
    std::vector<Monitor> monitors;
    int trials = 20;
    std::vector<std::string> probes{"contractivity", "sector", "stationary"};
    std::vector<double> sector_thetas;
    int sector_samples = 6;
    Index sector_coarse_n = 0;  // 0 = run the sector probe on the main grid
    int mms_levels = 0;
    std::string mms_solution;
    std::uint64_t seed = 20240901ULL;
};

struct ProblemConfig {
    std::string driver = "generic";  // heat-on-holes | degenerate-domain | heston | generic
    GeometryConfig geometry;
    OperatorConfig op;
    RunConfig run;
    std::string out_dir = "out";
    std::string name = "run";
};

inline std::vector<Monitor> standard_monitors() {
    std::vector<Monitor> ms;
    const double ps[3] = {1.0, 2.0, NormSpec::inf};
    for (double p : ps)
        for (double t : {-1.0, 0.0, 1.0}) ms.push_back({p, t});
    return ms;
}

inline ProblemConfig parse_config(const json& j) {
    ProblemConfig c;
    c.driver = j.value("driver", c.driver);
    c.name = j.value("name", c.name);
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        c.geometry.kind = g.value("kind", c.geometry.kind);
        c.geometry.n = g.value("n", c.geometry.n);
        c.geometry.n2 = g.value("n2", c.geometry.n2);
        c.geometry.eps = g.value("eps", c.geometry.eps);
        c.geometry.grading = g.value("grading", c.geometry.grading);
        if (g.contains("R")) {
            if (g["R"].contains("name")) c.geometry.R_name = g["R"]["name"];
            if (g["R"].contains("poly"))
                c.geometry.R_poly = g["R"]["poly"].get<std::vector<double>>();
        }
        if (g.contains("holes"))
            for (const auto& h : g["holes"])
                c.geometry.holes.push_back(
                    {h.value("cx", 0.0), h.value("cy", 0.0), h.value("radius", 0.25)});
        if (g.contains("points"))
            for (const auto& p : g["points"])
                c.geometry.points.emplace_back(p[0].get<double>(), p[1].get<double>());
        c.geometry.outer = g.value("outer", c.geometry.outer);
        c.geometry.outer_size = g.value("outer_size", c.geometry.outer_size);
        c.geometry.collar = g.value("collar", c.geometry.collar);
        c.geometry.cluster = g.value("cluster", c.geometry.cluster);
        c.geometry.X = g.value("X", c.geometry.X);
        c.geometry.Y = g.value("Y", c.geometry.Y);
    }
    if (j.contains("operator")) {
        const auto& o = j["operator"];
        c.op.preset = o.value("preset", c.op.preset);
        c.op.lambda = o.value("lambda", c.op.lambda);
        c.op.lambda_prime = o.value("lambda_prime", c.op.lambda_prime);
        c.op.omega = o.value("omega", c.op.omega);
        c.op.drift = o.value("drift", c.op.drift);
        c.op.route = o.value("route", c.op.route);
        c.op.C1 = o.value("C1", c.op.C1);
        c.op.witness_M = o.value("witness_M", c.op.witness_M);
        c.op.region_rho_max = o.value("region_rho_max", c.op.region_rho_max);
        c.op.a1_const = o.value("a1_const", 0.0);
        if (o.contains("tabulated")) {
            const auto& t = o["tabulated"];
            auto grab = [&](const char* key, std::vector<double>& dst) {
                if (t.contains(key)) dst = t[key].get<std::vector<double>>();
            };
            grab("A00", c.op.tabulated.A00);
            grab("A01", c.op.tabulated.A01);
            grab("A11", c.op.tabulated.A11);
            grab("a1x_re", c.op.tabulated.a1_re[0]);
            grab("a1y_re", c.op.tabulated.a1_re[1]);
            grab("a1x_im", c.op.tabulated.a1_im[0]);
            grab("a1y_im", c.op.tabulated.a1_im[1]);
            grab("a0_re", c.op.tabulated.a0_re);
            grab("a0_im", c.op.tabulated.a0_im);
        }
        if (o.contains("time")) {
            c.op.time_factor = o["time"].value("factor", std::string("none"));
            c.op.holder_exponent = o["time"].value("holder", 1.0);
        }
        if (o.contains("a0_const")) {
            const auto& a = o["a0_const"];
            if (a.is_array())
                c.op.a0_const = cplx(a[0].get<double>(), a[1].get<double>());
            else
                c.op.a0_const = cplx(a.get<double>(), 0.0);
        }
        if (o.contains("heston")) {
            const auto& h = o["heston"];
            c.op.heston.alpha = h.value("alpha", 0.5);
            c.op.heston.sigma = h.value("sigma", 1.0);
            c.op.heston.rho_corr = h.value("corr", 0.0);
            if (h.contains("b0")) {
                c.op.heston.b0[0] = h["b0"][0];
                c.op.heston.b0[1] = h["b0"][1];
            }
            if (h.contains("b1")) {
                c.op.heston.b1[0] = h["b1"][0];
                c.op.heston.b1[1] = h["b1"][1];
            }
            c.op.heston.c0 = h.value("c0", 0.0);
            c.op.heston.c1 = h.value("c1", 0.0);
            c.op.heston.c2 = h.value("c2", 0.0);
            c.op.lambda = c.op.heston.lambda();
        }
    }
    if (j.contains("run")) {
        const auto& r = j["run"];
        const std::string sch = r.value("scheme", std::string("implicit-euler"));
        require(sch == "implicit-euler" || sch == "crank-nicolson",
                "config: unknown scheme " + sch);
        c.run.scheme = (sch == "crank-nicolson") ? Scheme::CrankNicolson : Scheme::ImplicitEuler;
        c.run.dt = r.value("dt", c.run.dt);
        c.run.T = r.value("T", c.run.T);
        if (r.contains("monitors")) {
            if (r["monitors"].is_string() && r["monitors"] == "standard-9") {
                c.run.monitors = standard_monitors();
            } else {
                for (const auto& m : r["monitors"]) {
                    double p = m[0].is_string() ? NormSpec::inf : m[0].get<double>();
                    c.run.monitors.push_back({p, m[1].get<double>()});
                }
            }
        } else {
            c.run.monitors = standard_monitors();
        }
        c.run.trials = r.value("trials", c.run.trials);
        if (r.contains("probes")) c.run.probes = r["probes"].get<std::vector<std::string>>();
        if (r.contains("sector")) {
            const auto& s = r["sector"];
            if (s.contains("thetas")) c.run.sector_thetas = s["thetas"].get<std::vector<double>>();
            c.run.sector_samples = s.value("samples", c.run.sector_samples);
            c.run.sector_coarse_n = s.value("coarse_n", c.run.sector_coarse_n);
        }
        if (r.contains("mms")) {
            c.run.mms_levels = r["mms"].value("levels", 3);
            c.run.mms_solution = r["mms"].value("solution", std::string("default"));
        }
        c.run.seed = r.value("seed", c.run.seed);
    }
    if (j.contains("output")) c.out_dir = j["output"].value("dir", c.out_dir);
    if (c.run.sector_thetas.empty())
        for (int k = 1; k <= 6; ++k) c.run.sector_thetas.push_back(kPi / 2 + k * kPi / 16);
    return c;
}

inline ProblemConfig load_config(const std::string& path) {
    std::ifstream in(path);
    require(in.good(), "cannot open config " + path);
    json j;
    in >> j;
    return parse_config(j);
}

/// Builds the geometry at a refinement level: node counts scale by 2^level;
/// with refine_eps the truncation parameter is halved per level as well.
inline ModelManifold build_geometry(const GeometryConfig& g, int level = 0,
                                    bool refine_eps = false) {
    const Index f = Index(1) << level;
    const double eps = refine_eps ? g.eps / double(f) : g.eps;
    const auto grading = (g.grading == "uniform") ? Grading::Kind::Uniform
                                                  : Grading::Kind::GeometricTowardStart;
    auto R = g.R_poly.empty() ? cusp_catalog(g.R_name) : cusp_polynomial(g.R_poly);
    if (g.kind == "cusp-interval")
        return build_cusp_interval(R, g.n * f, eps, grading);
    if (g.kind == "pipe") return build_pipe(R, g.n * f, g.n2 * f, eps, grading);
    if (g.kind == "cone") return build_cone(g.n * f, g.n2 * f, eps);
    if (g.kind == "domain-with-holes")
        return build_domain_with_holes(g.outer == "box" ? OuterShape::Box : OuterShape::Disk,
                                       g.outer_size, g.holes, g.n * f, g.collar, eps, false,
                                       g.cluster);
    if (g.kind == "punctured-domain")
        return build_punctured_domain(g.points, eps, g.n * f, g.collar, g.outer_size);
    if (g.kind == "heston-strip")
        return build_heston_strip(g.X, g.Y, eps, g.n * f, g.n2 * f, grading);
    if (g.kind == "degenerate-interval")
        return build_degenerate_interval(g.n * f, eps, g.collar, grading);
    if (g.kind == "degenerate-disk")
        return build_domain_with_holes(OuterShape::Disk, g.outer_size, {}, g.n * f, g.collar,
                                       eps, true, 0.0);
    throw ConfigError("unknown geometry kind: " + g.kind);
}

/// Builds the operator coefficients for a geometry per the configured preset.
inline OperatorSpec build_operator(const OperatorConfig& oc, const ModelManifold& M) {
    OperatorSpec spec;
    spec.lambda = oc.lambda;
    spec.lambda_prime = oc.lambda_prime;
    spec.omega = oc.omega;
    spec.drift = (oc.drift == "centered") ? DriftScheme::Centered : DriftScheme::Upwind;
    if (oc.preset == "laplace-beltrami") {
        require(std::abs(oc.lambda - 2.0) < 1e-12, "laplace-beltrami preset has lambda = 2");
        spec.coeffs = coeffs_laplace_beltrami(M);
        if (oc.a0_const != cplx(0)) {
            for (Index p = 0; p < M.size(); ++p)
                spec.coeffs.a0[p] = oc.a0_const * std::pow(M.rho[p], -oc.lambda);
        }
    } else if (oc.preset == "degenerate-power") {
        spec.coeffs = coeffs_power(M, oc.lambda);
        if (oc.a0_const != cplx(0)) {
            for (Index p = 0; p < M.size(); ++p)
                spec.coeffs.a0[p] = oc.a0_const * std::pow(M.rho[p], -oc.lambda);
        }
    } else if (oc.preset == "degenerate-domain") {
        spec.coeffs = coeffs_degenerate_domain(M, oc.lambda, oc.a1_const, oc.a0_const);
    } else if (oc.preset == "heston") {
        spec.coeffs = coeffs_heston(M, oc.heston);
        spec.lambda = oc.heston.lambda();
    } else if (oc.preset == "tabulated") {
        const Index n = M.size();
        auto fill = [&](const std::vector<double>& src, RealField& dst, const char* what) {
            require(static_cast<Index>(src.size()) == n,
                    std::string("tabulated ") + what + ": expected one value per lattice node");
            dst = Eigen::Map<const RealField>(src.data(), n);
        };
        fill(oc.tabulated.A00, spec.coeffs.A00, "A00");
        if (M.dim() == 2) {
            fill(oc.tabulated.A11, spec.coeffs.A11, "A11");
            if (!oc.tabulated.A01.empty()) fill(oc.tabulated.A01, spec.coeffs.A01, "A01");
        }
        auto fillc = [&](const std::vector<double>& re, const std::vector<double>& im,
                         Field& dst) {
            if (re.empty() && im.empty()) return;
            dst = Field::Zero(n);
            if (!re.empty()) {
                require(static_cast<Index>(re.size()) == n, "tabulated field size mismatch");
                for (Index p = 0; p < n; ++p) dst[p] += re[p];
            }
            if (!im.empty()) {
                require(static_cast<Index>(im.size()) == n, "tabulated field size mismatch");
                for (Index p = 0; p < n; ++p) dst[p] += cplx(0, im[p]);
            }
        };
        fillc(oc.tabulated.a1_re[0], oc.tabulated.a1_im[0], spec.coeffs.a1_0);
        fillc(oc.tabulated.a1_re[1], oc.tabulated.a1_im[1], spec.coeffs.a1_1);
        fillc(oc.tabulated.a0_re, oc.tabulated.a0_im, spec.coeffs.a0);
    } else {
        throw ConfigError("unknown operator preset: " + oc.preset);
    }
    spec.coeffs.holder_exponent = oc.holder_exponent;
    return spec;
}

}  // namespace sp
