#include "gbdt/config.hpp"

#include <json.hpp>

#include <set>
#include <stdexcept>

#include "gbdt/catalog.hpp"

namespace gbdt::cli {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

Complex parse_complex(const json& j, const std::string& where) {
    if (j.is_number()) return Complex(j.get<double>(), 0.0);
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
        return Complex(j[0].get<double>(), j[1].get<double>());
    throw std::invalid_argument("config: " + where + " must be a number or [re, im]");
}

ComplexMatrix parse_matrix(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("config: " + where + " must be a nonempty array of rows");
    const size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw std::invalid_argument("config: " + where + " rows must be nonempty arrays");
    const size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (size_t i = 0; i < rows; ++i) {
        if (!j[i].is_array() || j[i].size() != cols)
            throw std::invalid_argument("config: " + where + " rows must have equal width");
        for (size_t k = 0; k < cols; ++k)
            m(static_cast<Index>(i), static_cast<Index>(k)) =
                parse_complex(j[i][k], where + " entry");
    }
    return m;
}

ComplexVector parse_vector(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty())
        throw std::invalid_argument("config: " + where + " must be a nonempty array");
    ComplexVector v(static_cast<Index>(j.size()));
    for (size_t i = 0; i < j.size(); ++i)
        v(static_cast<Index>(i)) = parse_complex(j[i], where + " entry");
    return v;
}

GridSpec parse_grid_json(const json& j, const std::string& where) {
    if (j.is_string()) return GridSpec::parse(j.get<std::string>());
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            (void)value;
            if (key != "start" && key != "stop" && key != "step")
                throw std::invalid_argument("config: unknown key '" + key + "' in " + where);
        }
        GridSpec g;
        g.start = j.at("start").get<double>();
        g.stop = j.at("stop").get<double>();
        g.step = j.at("step").get<double>();
        g.validate();
        return g;
    }
    throw std::invalid_argument("config: " + where +
                                " must be \"start:stop:step\" or an object");
}

ordered_json matrix_to_json(const ComplexMatrix& m) {
    ordered_json rows = ordered_json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (Index k = 0; k < m.cols(); ++k)
            row.push_back({m(i, k).real(), m(i, k).imag()});
        rows.push_back(row);
    }
    return rows;
}

}  // namespace

void apply_config_json(RunConfig& cfg, const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
    static const std::set<std::string> known = {
        "preset", "b", "c", "d", "A", "S0", "theta1", "theta2", "Q",
        "grid", "tgrid", "lambda", "f0", "out", "verify", "tol_identity", "tol_residual"};
    for (const auto& [key, value] : j.items()) {
        if (known.find(key) == known.end())
            throw std::invalid_argument("config: unknown key '" + key + "'");
        try {
            if (key == "preset") cfg.preset = value.get<std::string>();
            else if (key == "b") cfg.b = value.get<double>();
            else if (key == "c") cfg.c = value.get<double>();
            else if (key == "d") cfg.d = value.get<double>();
            else if (key == "A") cfg.a = parse_matrix(value, "A");
            else if (key == "S0") cfg.s0 = parse_matrix(value, "S0");
            else if (key == "theta1") cfg.theta1 = parse_matrix(value, "theta1");
            else if (key == "theta2") cfg.theta2 = parse_matrix(value, "theta2");
            else if (key == "Q") cfg.q = parse_matrix(value, "Q");
            else if (key == "grid") cfg.grid = parse_grid_json(value, "grid");
            else if (key == "tgrid") cfg.tgrid = parse_grid_json(value, "tgrid");
            else if (key == "lambda") {
                cfg.lambdas.clear();
                if (value.is_number()) {
                    cfg.lambdas.push_back(Complex(value.get<double>(), 0.0));
                } else if (value.is_array() && value.size() == 2 && value[0].is_number() &&
                           value[1].is_number()) {
                    // A two-number array is one complex value, not two reals.
                    cfg.lambdas.push_back(parse_complex(value, "lambda"));
                } else if (value.is_array() && !value.empty()) {
                    for (const auto& item : value)
                        cfg.lambdas.push_back(parse_complex(item, "lambda entry"));
                } else {
                    throw std::invalid_argument(
                        "config: lambda must be a number, [re, im], or a list");
                }
            }
            else if (key == "f0") cfg.f0 = parse_vector(value, "f0");
            else if (key == "out") cfg.out = value.get<std::string>();
            else if (key == "verify") cfg.verify = value.get<bool>();
            else if (key == "tol_identity") cfg.tol_identity = value.get<double>();
            else if (key == "tol_residual") cfg.tol_residual = value.get<double>();
        } catch (const json::exception& e) {
            throw std::invalid_argument("config: bad value for '" + key + "': " + e.what());
        }
    }
    if (cfg.tol_identity <= 0.0 || cfg.tol_residual <= 0.0)
        throw std::invalid_argument("config: tolerances must be positive");
}

std::vector<Complex> parse_lambda_list(const std::string& text) {
    std::vector<Complex> out;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t comma = text.find(',', pos);
        const std::string piece =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(piece, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("lambda: expected comma-separated reals, got '" + text +
                                        "'");
        }
        if (used != piece.size())
            throw std::invalid_argument("lambda: expected comma-separated reals, got '" + text +
                                        "'");
        out.push_back(Complex(v, 0.0));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (out.empty()) throw std::invalid_argument("lambda: list must be nonempty");
    return out;
}

std::string preset_config_json(const std::string& id) {
    ordered_json j;
    j["preset"] = id;
    if (id == "ee2") {
        ComplexMatrix one = ComplexMatrix::Identity(1, 1);
        j["S0"] = matrix_to_json(one);
        j["theta2"] = matrix_to_json(one);
        catalog::Ee2 preset{one, one};
        j["A"] = matrix_to_json(preset.triple().a);
        j["theta1"] = matrix_to_json(preset.triple().theta1);
        j["Q"] = matrix_to_json(preset.dressing().q);
    } else if (id == "ee3" || id == "ee36") {
        catalog::Ee3 preset{1.0, id == "ee3" ? 1.0 : 0.0, 1.0};
        j["b"] = preset.b;
        j["c"] = preset.c;
        j["d"] = preset.d;
        const Triple t = preset.triple();
        j["A"] = matrix_to_json(t.a);
        j["S0"] = matrix_to_json(t.s0);
        j["theta1"] = matrix_to_json(t.theta1);
        j["theta2"] = matrix_to_json(t.theta2);
        j["Q"] = matrix_to_json(preset.q());
    } else {
        throw std::invalid_argument("unknown preset '" + id + "' (expected ee2, ee3 or ee36)");
    }
    j["grid"] = "0.1:5:0.1";
    j["lambda"] = {1.0};
    return j.dump(2) + "\n";
}

}  // namespace gbdt::cli
