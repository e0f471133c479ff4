#pragma once

// Integer matrices: Smith and Hermite forms over Z.

#include <vector>

#include "lietorus/field.hpp"
#include "lietorus/rootsys.hpp"

namespace lietorus {

using ZMat = std::vector<std::vector<Integer>>;

ZMat zmat_identity(size_t n);
ZMat zmat_mul(const ZMat& a, const ZMat& b);
ZMat to_zmat(const IntMat& a);
IntMat to_intmat(const ZMat& a);  // throws DimensionMismatch on overflow
Integer zmat_det(const ZMat& a);

struct SmithForm {
  ZMat U, D, V;  // U A V = D, U and V unimodular, d_i | d_{i+1}, d_i >= 0
};

SmithForm smith_normal_form(const ZMat& a);

// Row-style Hermite basis of the lattice spanned by the rows (zero rows dropped).
ZMat lattice_basis(const ZMat& rows, size_t n);

// Invariant factors > 1 of Z^n / (row lattice), in decreasing divisibility order.
// Throws DimensionMismatch if the quotient is infinite.
std::vector<Integer> quotient_invariant_factors(const ZMat& rows, size_t n);

}  // namespace lietorus
