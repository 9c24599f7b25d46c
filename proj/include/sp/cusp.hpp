#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sp/core.hpp"

namespace sp {

enum class CuspClass { General, Mild, UniformlyMild };

inline const char* to_string(CuspClass c) {
    switch (c) {
        case CuspClass::General: return "general";
        case CuspClass::Mild: return "mild";
        default: return "uniformly-mild";
    }
}

/**
 * Profile function R on (0,1] with R(1)=1 together with its first two
 * derivatives. Classification (general / mild / uniformly-mild) is assigned
 * by check_cusp_characteristic from dense samples.
 */
struct CuspCharacteristic {
    std::string name;
    std::function<double(double)> R, dR, ddR;
    CuspClass cls = CuspClass::General;
};

struct CuspReport {
    double inf_dR = 0, sup_dR = 0, sup_absddR = 0;
    double mild_constant = 0;           // C with sampled dR in [1/C, C]
    bool normalization_ok = false;      // |R(1)-1| <= 1e-10
    bool positive = false;              // R > 0 on samples
    bool integral_divergent = false;    // certified from dR <= C (R(t) <= C t)
    CuspClass cls = CuspClass::General;
};

/// Samples R on (0,1], certifies the basic profile properties and classifies.
inline CuspReport check_cusp_characteristic(const CuspCharacteristic& R, Index samples = 4096) {
    CuspReport rep;
    if (std::abs(R.R(1.0) - 1.0) > 1e-10)
        throw GeometryError("cusp characteristic not normalized: R(1) != 1");
    rep.normalization_ok = true;

    rep.positive = true;
    rep.inf_dR = std::numeric_limits<double>::infinity();
    for (Index k = 0; k < samples; ++k) {
        const double t = double(k + 1) / double(samples);  // dense sample of (0,1]
        if (R.R(t) <= 0) rep.positive = false;
        const double d = R.dR(t);
        rep.inf_dR = std::min(rep.inf_dR, d);
        rep.sup_dR = std::max(rep.sup_dR, d);
        rep.sup_absddR = std::max(rep.sup_absddR, std::abs(R.ddR(t)));
    }
    // mild requires dR bounded away from zero; profiles with dR -> 0 show a
    // sampled infimum at the 1/samples scale and fall below this cut
    const bool mild = rep.positive && rep.inf_dR > 1e-2;
    if (mild) {
        rep.mild_constant = std::max(rep.sup_dR, 1.0 / rep.inf_dR);
        // dR <= C forces R(t) <= C*t, so the integral of 1/R over (0,1] diverges
        rep.integral_divergent = true;
        rep.cls = std::isfinite(rep.sup_absddR) ? CuspClass::UniformlyMild : CuspClass::Mild;
    }
    return rep;
}

/// Named catalog used by config files.
inline CuspCharacteristic cusp_catalog(const std::string& name) {
    if (name == "linear")
        return {"linear", [](double t) { return t; }, [](double) { return 1.0; },
                [](double) { return 0.0; }};
    if (name == "arctan")
        return {"arctan", [](double t) { return 4.0 / kPi * std::atan(t); },
                [](double t) { return 4.0 / kPi / (1.0 + t * t); },
                [](double t) { return -8.0 / kPi * t / ((1.0 + t * t) * (1.0 + t * t)); }};
    if (name == "log") {
        const double e1 = std::exp(1.0) - 1.0;
        return {"log", [e1](double t) { return std::log1p(e1 * t); },
                [e1](double t) { return e1 / (1.0 + e1 * t); },
                [e1](double t) { return -e1 * e1 / ((1.0 + e1 * t) * (1.0 + e1 * t)); }};
    }
    if (name == "sine-mix")
        return {"sine-mix",
                [](double t) { return 2.0 * t / 3.0 + std::sin(kPi * t / 2.0) / 3.0; },
                [](double t) { return 2.0 / 3.0 + kPi / 6.0 * std::cos(kPi * t / 2.0); },
                [](double t) { return -kPi * kPi / 12.0 * std::sin(kPi * t / 2.0); }};
    if (name == "quadratic")  // not mild, kept for rejection tests
        return {"quadratic", [](double t) { return t * t; }, [](double t) { return 2.0 * t; },
                [](double) { return 2.0; }};
    throw ConfigError("unknown cusp characteristic: " + name);
}

/// R as a polynomial sum c_k t^k; rejects profiles with R(1) != 1.
inline CuspCharacteristic cusp_polynomial(std::vector<double> c) {
    auto val = [c](double t) {
        double s = 0, p = 1;
        for (double ck : c) { s += ck * p; p *= t; }
        return s;
    };
    auto der = [c](double t) {
        double s = 0, p = 1;
        for (size_t k = 1; k < c.size(); ++k) { s += double(k) * c[k] * p; p *= t; }
        return s;
    };
    auto dder = [c](double t) {
        double s = 0, p = 1;
        for (size_t k = 2; k < c.size(); ++k) { s += double(k * (k - 1)) * c[k] * p; p *= t; }
        return s;
    };
    CuspCharacteristic R{"polynomial", val, der, dder};
    if (std::abs(val(1.0) - 1.0) > 1e-10)
        throw GeometryError("polynomial cusp characteristic not normalized: R(1) != 1");
    return R;
}

}  // namespace sp
