#pragma once

#include <vector>

#include <gmpxx.h>

namespace steinberg::qlinalg {

using Row = std::vector<mpq_class>;

// Rank of a rational matrix given by rows of equal length.
int rank(std::vector<Row> rows);
// Dimension of {x : A x = 0} for A with `cols` columns.
int nullity(const std::vector<Row>& rows, int cols);
// Basis of the nullspace.
std::vector<Row> nullspace(std::vector<Row> rows, int cols);

}  // namespace steinberg::qlinalg
