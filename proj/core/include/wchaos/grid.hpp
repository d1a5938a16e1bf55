#pragma once

// Discretized L^2(R_+^n): dense coefficient tensors over the orthonormal
// step-function basis of a uniform grid on [0, T], with the sesquilinear
// inner product, tensor products, contractions, and the mirror involution.

#include <complex>
#include <cstddef>
#include <vector>

namespace wchaos {

using Complex = std::complex<double>;

// Uniform grid on [0, horizon] with `cells` equal cells. Cell k is
// [k*T/m, (k+1)*T/m); the associated orthonormal basis function is
// e_k = (m/T)^{1/2} * 1_{cell k}, which has unit L^2 norm.
struct GridSpec {
  double horizon = 1.0;  // T > 0
  int cells = 1;         // m >= 1

  double cell_width() const { return horizon / cells; }
  friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// Degree-n function in the grid span of L^2(R_+^n), stored as the dense
// row-major coefficient array against the orthonormal basis
// e_{i1} (x) ... (x) e_{in}. Because that basis is orthonormal and real,
// every L^2 formula below is a plain Euclidean formula in the coefficients.
// Degree 0 is a single scalar.
struct CoeffTensor {
  GridSpec grid;
  int degree = 0;
  std::vector<Complex> c;  // size = cells^degree, index (i1..in) row-major
};

// cells^degree, the coefficient count of a degree-n tensor.
std::size_t tensor_size(const GridSpec& grid, int degree);

// Reverse the base-m digit string of length `length` encoded in `flat`
// (most-significant digit first). Used for mirror maps and the reversed
// slot pairing inside contractions.
std::size_t reversed_flat_index(std::size_t flat, int m, int length);

// Constructors.
CoeffTensor zero_tensor(const GridSpec& grid, int degree);
CoeffTensor scalar_tensor(const GridSpec& grid, Complex value);
CoeffTensor basis_vector(const GridSpec& grid, int k);                       // e_k
CoeffTensor basis_tensor(const GridSpec& grid, const std::vector<int>& word);  // e_{i1} (x) ... (x) e_{in}

// Elementwise algebra (same grid and degree required for +/-).
CoeffTensor operator+(const CoeffTensor& f, const CoeffTensor& g);
CoeffTensor operator-(const CoeffTensor& f, const CoeffTensor& g);
CoeffTensor operator*(Complex a, const CoeffTensor& f);

// <f,g> = sum c_f * conj(c_g): linear in the first argument, conjugate-linear
// in the second. Requires equal grid and degree.
Complex inner(const CoeffTensor& f, const CoeffTensor& g);

// sqrt(<f,f>).
double l2_norm(const CoeffTensor& f);

// Largest |coefficient|.
double max_abs(const CoeffTensor& f);

// True iff every coefficient is exactly zero.
bool is_zero(const CoeffTensor& f);

// (f (x) g)[i.., j..] = f[i..] * g[j..]; a degree-0 factor acts as a scalar.
CoeffTensor tensor(const CoeffTensor& f, const CoeffTensor& g);

// The p'th contraction of f (degree n) and g (degree k):
//   out[t1..t_{n-p}, u_{p+1}..u_k]
//     = sum_{s1..sp} f[t.., s1..sp] * g[sp..s1, u..]
// Bilinear, no conjugation; g's first p slots are paired in reversed order.
// Requires 0 <= p <= min(n, k) and a shared grid.
CoeffTensor contract_p(const CoeffTensor& f, const CoeffTensor& g, int p);

// Mirror involution f*(i1..in) = conj(f(in..i1)).
CoeffTensor involution(const CoeffTensor& f);

// True iff max |f - involution(f)| <= tol.
bool is_mirror_symmetric(const CoeffTensor& f, double tol);

// Coefficients of the orthogonal projection of 1_{[a,b]} onto the grid span:
// <1_{[a,b]}, e_k> = (m/T)^{1/2} * |cell k intersect [a,b]|. Exact when a and
// b are grid-aligned. Requires 0 <= a <= b.
CoeffTensor project_indicator(const GridSpec& grid, double a, double b);

}  // namespace wchaos
