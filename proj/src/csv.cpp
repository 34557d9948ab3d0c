#include "gbdt/csv.hpp"

#include <cstdio>

namespace gbdt::cli {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return std::string(buf);
}

std::vector<std::string> matrix_columns(const std::string& name, Index rows, Index cols) {
    std::vector<std::string> out;
    for (Index i = 0; i < rows; ++i) {
        for (Index j = 0; j < cols; ++j) {
            const std::string base = name + "_" + std::to_string(i) + std::to_string(j);
            out.push_back(base + ".re");
            out.push_back(base + ".im");
        }
    }
    return out;
}

void push_matrix(std::vector<std::string>& cells, const ComplexMatrix& m) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            cells.push_back(fmt(m(i, j).real()));
            cells.push_back(fmt(m(i, j).imag()));
        }
    }
}

void push_singular(std::vector<std::string>& cells, Index rows, Index cols) {
    for (Index i = 0; i < rows * cols * 2; ++i) cells.push_back("SINGULAR");
}

}  // namespace gbdt::cli
