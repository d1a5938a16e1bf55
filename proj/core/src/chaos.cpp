#include "wchaos/chaos.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace wchaos {

namespace {

void require_same_grid(const ChaosElement& Y, const ChaosElement& Z, const char* op) {
  if (!(Y.grid == Z.grid)) {
    throw std::invalid_argument(std::string(op) + ": grid mismatch");
  }
}

// Add t into Y's degree map, dropping the slot if the sum is exactly zero.
void accumulate(ChaosElement& Y, const CoeffTensor& t) {
  auto it = Y.degrees.find(t.degree);
  if (it == Y.degrees.end()) {
    if (!is_zero(t)) Y.degrees.emplace(t.degree, t);
    return;
  }
  it->second = it->second + t;
  if (is_zero(it->second)) Y.degrees.erase(it);
}

}  // namespace

ChaosElement chaos_zero(const GridSpec& grid) {
  return ChaosElement{grid, {}};
}

ChaosElement chaos_scalar(const GridSpec& grid, Complex value) {
  ChaosElement Y{grid, {}};
  accumulate(Y, scalar_tensor(grid, value));
  return Y;
}

ChaosElement chaos_one(const GridSpec& grid) {
  return chaos_scalar(grid, Complex(1.0, 0.0));
}

ChaosElement chaos_from_tensor(const CoeffTensor& f) {
  ChaosElement Y{f.grid, {}};
  accumulate(Y, f);
  return Y;
}

std::optional<int> top_degree(const ChaosElement& Y) {
  if (Y.degrees.empty()) return std::nullopt;
  return Y.degrees.rbegin()->first;
}

bool is_zero(const ChaosElement& Y) {
  return Y.degrees.empty();
}

CoeffTensor component(const ChaosElement& Y, int n) {
  auto it = Y.degrees.find(n);
  if (it != Y.degrees.end()) return it->second;
  return zero_tensor(Y.grid, n);
}

ChaosElement operator+(const ChaosElement& Y, const ChaosElement& Z) {
  require_same_grid(Y, Z, "chaos add");
  ChaosElement out = Y;
  for (const auto& [n, g] : Z.degrees) accumulate(out, g);
  return out;
}

ChaosElement operator-(const ChaosElement& Y, const ChaosElement& Z) {
  require_same_grid(Y, Z, "chaos subtract");
  ChaosElement out = Y;
  for (const auto& [n, g] : Z.degrees) accumulate(out, Complex(-1.0, 0.0) * g);
  return out;
}

ChaosElement operator*(Complex a, const ChaosElement& Y) {
  ChaosElement out{Y.grid, {}};
  for (const auto& [n, f] : Y.degrees) accumulate(out, a * f);
  return out;
}

ChaosElement ito_product(const ChaosElement& Y, const ChaosElement& Z) {
  require_same_grid(Y, Z, "ito_product");
  ChaosElement out{Y.grid, {}};
  for (const auto& [n, f] : Y.degrees) {
    for (const auto& [m, g] : Z.degrees) {
      const int pmax = n < m ? n : m;
      for (int p = 0; p <= pmax; ++p) {
        accumulate(out, contract_p(f, g, p));
      }
    }
  }
  return out;
}

ChaosElement adjoint(const ChaosElement& Y) {
  ChaosElement out{Y.grid, {}};
  for (const auto& [n, f] : Y.degrees) accumulate(out, involution(f));
  return out;
}

Complex trace(const ChaosElement& Y) {
  auto it = Y.degrees.find(0);
  if (it == Y.degrees.end()) return Complex(0.0, 0.0);
  return it->second.c[0];
}

Complex l2_inner(const ChaosElement& Y, const ChaosElement& Z) {
  require_same_grid(Y, Z, "l2_inner");
  Complex total(0.0, 0.0);
  for (const auto& [n, f] : Y.degrees) {
    auto it = Z.degrees.find(n);
    if (it != Z.degrees.end()) total += inner(f, it->second);
  }
  return total;
}

double l2_norm(const ChaosElement& Y) {
  double sq = 0.0;
  for (const auto& [n, f] : Y.degrees) {
    const double nrm = l2_norm(f);
    sq += nrm * nrm;
  }
  return std::sqrt(sq);
}

bool is_self_adjoint(const ChaosElement& Y, double tol) {
  for (const auto& [n, f] : Y.degrees) {
    if (!is_mirror_symmetric(f, tol)) return false;
  }
  return true;
}

OperatorMatrix matrix_rep(const ChaosElement& Y, int D) {
  FockBasis basis = enumerate_basis(Y.grid, D);
  const std::size_t dim = basis.dimension();
  const std::size_t m = static_cast<std::size_t>(Y.grid.cells);
  OperatorMatrix A{basis, Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                 static_cast<Eigen::Index>(dim))};
  for (std::size_t col = 0; col < dim; ++col) {
    const std::vector<int>& w = A.basis.words[col];
    const int len = static_cast<int>(w.size());
    for (const auto& [n, f] : Y.degrees) {
      const int pmax = n < len ? n : len;
      for (int p = 0; p <= pmax; ++p) {
        const int out_deg = n + len - 2 * p;
        if (out_deg > D) continue;
        // Against the basis tensor e_w, the p'th contraction collapses:
        // out[t, w_{p+1..len}] = f[t, w_p, w_{p-1}, .., w_1]. The reversed
        // prefix (w_p..w_1) reads as base-m digits with w_1 least
        // significant, and the surviving tail keeps its flat encoding.
        std::size_t rev = 0;
        for (int i = p - 1; i >= 0; --i) {
          rev = rev * m + static_cast<std::size_t>(w[static_cast<std::size_t>(i)]);
        }
        std::size_t tail = 0;
        for (int i = p; i < len; ++i) {
          tail = tail * m + static_cast<std::size_t>(w[static_cast<std::size_t>(i)]);
        }
        const std::size_t sz_t = tensor_size(Y.grid, n - p);
        const std::size_t sz_s = tensor_size(Y.grid, p);
        const std::size_t sz_tail = tensor_size(Y.grid, len - p);
        const std::size_t row_base = A.basis.offsets[static_cast<std::size_t>(out_deg)];
        for (std::size_t t = 0; t < sz_t; ++t) {
          const Complex coeff = f.c[t * sz_s + rev];
          if (coeff == Complex(0.0, 0.0)) continue;
          A.entries(static_cast<Eigen::Index>(row_base + t * sz_tail + tail),
                    static_cast<Eigen::Index>(col)) += coeff;
        }
      }
    }
  }
  return A;
}

FockVector chaos_vector(const ChaosElement& Y, const FockBasis& basis) {
  if (!(Y.grid == basis.grid)) {
    throw std::invalid_argument("chaos_vector: grid mismatch");
  }
  FockVector v{basis,
               Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(basis.dimension()))};
  for (const auto& [n, f] : Y.degrees) {
    if (n > basis.max_degree) continue;
    const std::size_t base = basis.offsets[static_cast<std::size_t>(n)];
    for (std::size_t i = 0; i < f.c.size(); ++i) {
      v.coefficients(static_cast<Eigen::Index>(base + i)) = f.c[i];
    }
  }
  return v;
}

ChaosElement free_bm(const GridSpec& grid, double t) {
  if (t < 0.0 || t > grid.horizon) {
    throw std::invalid_argument("free_bm: time outside [0, horizon]");
  }
  return chaos_from_tensor(project_indicator(grid, 0.0, t));
}

Complex moment(const ChaosElement& Y, int k) {
  if (k < 0) throw std::invalid_argument("moment: negative power");
  if (k == 0) return Complex(1.0, 0.0);
  ChaosElement power = Y;
  for (int i = 1; i < k; ++i) power = ito_product(power, Y);
  return trace(power);
}

double haagerup_bound(const ChaosElement& Y) {
  double bound = 0.0;
  for (const auto& [n, f] : Y.degrees) {
    bound += static_cast<double>(n + 1) * l2_norm(f);
  }
  return bound;
}

}  // namespace wchaos
