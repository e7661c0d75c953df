#include "steinberg/qlinalg.hpp"

#include <stdexcept>

namespace steinberg::qlinalg {

namespace {

// Reduced row echelon form in place; returns pivot columns.
std::vector<int> reduce(std::vector<Row>& rows, int cols) {
    std::vector<int> pivots;
    std::size_t r = 0;
    for (int c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[r], rows[piv]);
        const mpq_class inv = 1 / rows[r][c];
        for (int j = c; j < cols; ++j) rows[r][j] *= inv;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            const mpq_class f = rows[i][c];
            for (int j = c; j < cols; ++j) rows[i][j] -= f * rows[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

void check(const std::vector<Row>& rows, int cols) {
    for (const auto& row : rows)
        if (int(row.size()) != cols) throw std::invalid_argument("ragged rational matrix");
}

}  // namespace

int rank(std::vector<Row> rows) {
    if (rows.empty()) return 0;
    const int cols = int(rows[0].size());
    check(rows, cols);
    return int(reduce(rows, cols).size());
}

int nullity(const std::vector<Row>& rows, int cols) {
    check(rows, cols);
    std::vector<Row> copy = rows;
    return cols - int(reduce(copy, cols).size());
}

std::vector<Row> nullspace(std::vector<Row> rows, int cols) {
    check(rows, cols);
    const auto pivots = reduce(rows, cols);
    std::vector<bool> is_pivot(cols, false);
    for (int c : pivots) is_pivot[c] = true;
    std::vector<Row> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Row v(cols, 0);
        v[f] = 1;
        for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -rows[i][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

}  // namespace steinberg::qlinalg
