#pragma once

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace gbdt {

/// Uniform grid start, start+step, ... The stop value is included when it
/// lies within half a step of the last generated point.
struct GridSpec {
    double start = 0.0;
    double stop = 1.0;
    double step = 0.1;

    int count() const {
        int n = static_cast<int>(std::floor((stop - start) / step + 0.5)) + 1;
        return n < 1 ? 1 : n;
    }

    double point(int i) const { return start + i * step; }

    std::vector<double> points() const {
        std::vector<double> xs(static_cast<size_t>(count()));
        for (int i = 0; i < count(); ++i) xs[static_cast<size_t>(i)] = point(i);
        return xs;
    }

    void validate() const {
        if (!(step > 0.0)) throw std::invalid_argument("grid: step must be positive");
        if (!(stop >= start)) throw std::invalid_argument("grid: stop must not precede start");
        if (!std::isfinite(start) || !std::isfinite(stop) || !std::isfinite(step))
            throw std::invalid_argument("grid: bounds must be finite");
    }

    /// Parses "start:stop:step".
    static GridSpec parse(const std::string& text) {
        GridSpec g;
        size_t a = text.find(':');
        size_t b = (a == std::string::npos) ? std::string::npos : text.find(':', a + 1);
        if (a == std::string::npos || b == std::string::npos)
            throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
        size_t used = 0;
        try {
            g.start = std::stod(text.substr(0, a), &used);
            if (used != a) throw std::invalid_argument("");
            g.stop = std::stod(text.substr(a + 1, b - a - 1), &used);
            if (used != b - a - 1) throw std::invalid_argument("");
            g.step = std::stod(text.substr(b + 1), &used);
            if (used != text.size() - b - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw std::invalid_argument("grid: expected start:stop:step, got '" + text + "'");
        }
        g.validate();
        return g;
    }
};

}  // namespace gbdt
