#pragma once

#include "ttground/tt_matrix.hpp"
#include "ttground/tt_vector.hpp"

#include <iosfwd>
#include <string>

namespace ttground {

// Portable binary container for regression fixtures.  Everything is
// little-endian regardless of host order.
//
//   "TTV1" | d | n_1..n_d | r_0..r_d | cores
//   "TTM1" | d | n_1..n_d | m_1..m_d | R_0..R_d | cores
//
// Integers are signed 64-bit; core entries are 64-bit floats written
// row-major over [left, mode(, mode2), right], sites in order.  Loaders
// validate the magic, dimensions and boundary ranks and throw
// std::runtime_error on malformed or truncated input.

void write_tt(std::ostream& out, const TTVector& x);
void write_tt(std::ostream& out, const TTMatrix& A);
TTVector read_tt_vector(std::istream& in);
TTMatrix read_tt_matrix(std::istream& in);

void save_tt(const TTVector& x, const std::string& path);
void save_tt(const TTMatrix& A, const std::string& path);
TTVector load_tt_vector(const std::string& path);
TTMatrix load_tt_matrix(const std::string& path);

}  // namespace ttground
