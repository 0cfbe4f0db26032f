#ifndef GCORE_HAFNIAN_HPP
#define GCORE_HAFNIAN_HPP

#include "gcore/types.hpp"

namespace gcore {

/**
 * @brief Permanent of a square complex matrix.
 *
 * Uses Ryser's inclusion-exclusion formula with Gray-code updates,
 * O(2^k k) for a k x k matrix. The permanent of the empty matrix is 1.
 */
cplx permanent(const Mat& b);

/**
 * @brief Hafnian of a symmetric complex matrix: sum over perfect matchings
 * of the index set of the product of matched entries.
 *
 * The hafnian of the empty matrix is 1 and the hafnian of a matrix of odd
 * size is 0. Diagonal entries never contribute. Throws ValidationError if
 * the input is not square or not symmetric within tolerance.
 */
cplx hafnian(const Mat& a);

/**
 * @brief Loop hafnian of a symmetric complex matrix: sum over partitions of
 * the index set into singletons and pairs, where pairs contribute off-diagonal
 * entries and singletons contribute diagonal entries.
 *
 * Default fast path; runs in O(r^3 2^{r/2}) for an r x r matrix via
 * inclusion-exclusion over index pairs with eigenvalue power traces.
 */
cplx loop_hafnian(const Mat& r);

/// Reference loop hafnian by direct enumeration of singleton/pair partitions
/// in lexicographic order. Exponential in r; intended for r <= 12.
cplx loop_hafnian_enum(const Mat& r);

/**
 * @brief Builds the reduced matrix A_{p,q} from a 2m x 2m symmetric kernel V
 * and a length-2m vector D.
 *
 * Row/column k of V is repeated p_k times and row/column m+k is repeated
 * q_k times (k = 0..m-1, in index order); the diagonal of the repeated
 * matrix is then overwritten with the equally repeated entries of D.
 * Repetition happens first, then the diagonal replacement, so repeated
 * off-diagonal copies of v_kk survive.
 */
Mat reduced_matrix(const Mat& v, const Vec& d, const FockIndex& p,
                   const FockIndex& q);

/// Signed moment of the Gaussian kernel exp(w^T V w / 2 + D^T w) under
/// repeated-index reduction: (-1)^{|p|+|q|} loop_hafnian(reduced_matrix).
cplx reduced_moment(const Mat& v, const Vec& d, const FockIndex& p,
                    const FockIndex& q);

}  // namespace gcore

#endif
