#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracdiff {

/// Uniform 1-D grid with samples: values[i] lives at x0 + i*dx. Wide-domain
/// problems are represented by requiring the edge samples to sit below a
/// floor fraction of the peak (checked where fields enter spectral code).
struct SampledField {
    double x0 = 0.0;
    double dx = 1.0;
    std::vector<double> values;
    double boundary_floor = 1e-12; // edge-to-peak ratio the spectral code enforces

    SampledField() = default;
    SampledField(double x0_, double dx_, std::vector<double> v)
        : x0(x0_), dx(dx_), values(std::move(v)) {
        if (!(dx > 0.0))
            throw std::invalid_argument("SampledField: dx must be > 0");
        if (values.size() < 2)
            throw std::invalid_argument("SampledField: need at least 2 samples");
        for (double y : values)
            if (!std::isfinite(y))
                throw std::invalid_argument("SampledField: non-finite sample");
    }

    std::size_t size() const { return values.size(); }
    double x(std::size_t i) const { return x0 + double(i) * dx; }

    double max_abs() const {
        double m = 0.0;
        for (double y : values) m = std::max(m, std::abs(y));
        return m;
    }

    /// larger of the two edge magnitudes relative to the peak
    double boundary_ratio() const {
        double m = max_abs();
        if (m == 0.0) return 0.0;
        return std::max(std::abs(values.front()), std::abs(values.back())) / m;
    }
};

/// Prescribed source phi(x, t) of the inhomogeneous problem.
struct SourceTerm {
    std::function<double(double, double)> evaluator;
    std::string description;
};

} // namespace fracdiff
