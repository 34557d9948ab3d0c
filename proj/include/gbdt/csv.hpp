#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "gbdt/types.hpp"

namespace gbdt::cli {

/// Shortest round-trip decimal form of v ("%.17g"), identical across runs.
std::string fmt(double v);

/// Writes "# ..." metadata lines, one mandatory column-name row and data
/// rows. Line endings are always LF.
class CsvWriter {
public:
    explicit CsvWriter(std::ostream& os) : os_(os) {}

    void comment(const std::string& line) { os_ << "# " << line << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (size_t i = 0; i < cells.size(); ++i) {
            if (i) os_ << ",";
            os_ << cells[i];
        }
        os_ << "\n";
    }

private:
    std::ostream& os_;
};

/// Column labels name_{row}{col}.re / .im for every entry of an r x c
/// matrix, row-major.
std::vector<std::string> matrix_columns(const std::string& name, Index rows, Index cols);

/// Appends the matrix entries (row-major, re then im) to cells.
void push_matrix(std::vector<std::string>& cells, const ComplexMatrix& m);

/// Appends the literal SINGULAR token for every entry of an r x c matrix.
void push_singular(std::vector<std::string>& cells, Index rows, Index cols);

}  // namespace gbdt::cli
