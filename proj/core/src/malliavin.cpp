#include "wchaos/malliavin.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wchaos {

namespace {

void require_same_grid(const GridSpec& a, const GridSpec& b, const char* op) {
  if (!(a == b)) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

void require_direction(const GridSpec& grid, const CoeffTensor& h, const char* op) {
  if (h.degree != 1) {
    throw std::invalid_argument(std::string(op) + ": direction must have degree 1");
  }
  require_same_grid(grid, h.grid, op);
}

void require_biprocess(const SimpleBiprocess& U, const char* op) {
  if (U.values.size() != static_cast<std::size_t>(U.grid.cells)) {
    throw std::invalid_argument(std::string(op) + ": biprocess needs one value per cell");
  }
  for (const ChaosBitensor& V : U.values) require_same_grid(U.grid, V.grid, op);
}

// Add t into U's component map under `key`, dropping exact-zero results.
void accumulate(ChaosBitensor& U, std::pair<int, int> key, const CoeffTensor& t) {
  auto it = U.components.find(key);
  if (it == U.components.end()) {
    if (!is_zero(t)) U.components.emplace(key, t);
    return;
  }
  it->second = it->second + t;
  if (is_zero(it->second)) U.components.erase(it);
}

void accumulate(ChaosTritensor& A, std::array<int, 3> key, const CoeffTensor& t) {
  auto it = A.find(key);
  if (it == A.end()) {
    if (!is_zero(t)) A.emplace(key, t);
    return;
  }
  it->second = it->second + t;
  if (is_zero(it->second)) A.erase(it);
}

void accumulate(ChaosElement& Y, const CoeffTensor& t) {
  ChaosElement term = chaos_from_tensor(t);
  Y = Y + term;
}

// Left Ito action on the merged component ((a,b), C) by the degree-n kernel
// f: the p'th contraction pairs f's last p slots with the left leg's first p
// slots in reversed order, leaving the right leg untouched.
void left_multiply_into(ChaosBitensor& out, const CoeffTensor& f, int n,
                        const CoeffTensor& C, int a, int b) {
  const GridSpec& grid = C.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  const int pmax = n < a ? n : a;
  for (int p = 0; p <= pmax; ++p) {
    const std::size_t sz_t = tensor_size(grid, n - p);
    const std::size_t sz_s = tensor_size(grid, p);
    const std::size_t sz_u = tensor_size(grid, a - p);
    const std::size_t sz_b = tensor_size(grid, b);
    CoeffTensor term = zero_tensor(grid, n - p + a - p + b);
    for (std::size_t t = 0; t < sz_t; ++t) {
      for (std::size_t s = 0; s < sz_s; ++s) {
        const Complex fv = f.c[t * sz_s + s];
        if (fv == Complex(0.0, 0.0)) continue;
        const std::size_t rev_s = reversed_flat_index(s, grid.cells, p);
        for (std::size_t u = 0; u < sz_u; ++u) {
          for (std::size_t w = 0; w < sz_b; ++w) {
            term.c[(t * sz_u + u) * sz_b + w] +=
                fv * C.c[(rev_s * sz_u + u) * sz_b + w];
          }
        }
      }
    }
    accumulate(out, {n + a - 2 * p, b}, term);
  }
}

// Right Ito action on ((a,b), C) by the degree-k kernel g: the q'th
// contraction pairs the right leg's last q slots with g's first q slots in
// reversed order.
void right_multiply_into(ChaosBitensor& out, const CoeffTensor& C, int a, int b,
                         const CoeffTensor& g, int k) {
  const GridSpec& grid = C.grid;
  const int qmax = b < k ? b : k;
  for (int q = 0; q <= qmax; ++q) {
    const std::size_t sz_l = tensor_size(grid, a);
    const std::size_t sz_wh = tensor_size(grid, b - q);
    const std::size_t sz_r = tensor_size(grid, q);
    const std::size_t sz_ut = tensor_size(grid, k - q);
    CoeffTensor term = zero_tensor(grid, a + b - q + k - q);
    for (std::size_t r = 0; r < sz_r; ++r) {
      const std::size_t rev_r = reversed_flat_index(r, grid.cells, q);
      for (std::size_t ut = 0; ut < sz_ut; ++ut) {
        const Complex gv = g.c[rev_r * sz_ut + ut];
        if (gv == Complex(0.0, 0.0)) continue;
        for (std::size_t l = 0; l < sz_l; ++l) {
          for (std::size_t wh = 0; wh < sz_wh; ++wh) {
            term.c[(l * sz_wh + wh) * sz_ut + ut] +=
                C.c[(l * sz_wh + wh) * sz_r + r] * gv;
          }
        }
      }
    }
    accumulate(out, {a, b + k - 2 * q}, term);
  }
}

}  // namespace

ChaosBitensor bitensor_zero(const GridSpec& grid) {
  return ChaosBitensor{grid, {}};
}

ChaosBitensor outer_bitensor(const ChaosElement& Y, const ChaosElement& Z) {
  require_same_grid(Y.grid, Z.grid, "outer_bitensor");
  ChaosBitensor out{Y.grid, {}};
  for (const auto& [n, f] : Y.degrees) {
    for (const auto& [k, g] : Z.degrees) {
      accumulate(out, {n, k}, tensor(f, g));
    }
  }
  return out;
}

CoeffTensor bitensor_component(const ChaosBitensor& U, int a, int b) {
  auto it = U.components.find({a, b});
  if (it != U.components.end()) return it->second;
  return zero_tensor(U.grid, a + b);
}

bool is_zero(const ChaosBitensor& U) {
  return U.components.empty();
}

ChaosBitensor operator+(const ChaosBitensor& U, const ChaosBitensor& V) {
  require_same_grid(U.grid, V.grid, "bitensor add");
  ChaosBitensor out = U;
  for (const auto& [key, t] : V.components) accumulate(out, key, t);
  return out;
}

ChaosBitensor operator-(const ChaosBitensor& U, const ChaosBitensor& V) {
  require_same_grid(U.grid, V.grid, "bitensor subtract");
  ChaosBitensor out = U;
  for (const auto& [key, t] : V.components) {
    accumulate(out, key, Complex(-1.0, 0.0) * t);
  }
  return out;
}

ChaosBitensor operator*(Complex a, const ChaosBitensor& U) {
  ChaosBitensor out{U.grid, {}};
  for (const auto& [key, t] : U.components) accumulate(out, key, a * t);
  return out;
}

Complex bitensor_inner(const ChaosBitensor& U, const ChaosBitensor& V) {
  require_same_grid(U.grid, V.grid, "bitensor_inner");
  Complex total(0.0, 0.0);
  for (const auto& [key, t] : U.components) {
    auto it = V.components.find(key);
    if (it != V.components.end()) total += inner(t, it->second);
  }
  return total;
}

double bitensor_norm(const ChaosBitensor& U) {
  double sq = 0.0;
  for (const auto& [key, t] : U.components) {
    const double nrm = l2_norm(t);
    sq += nrm * nrm;
  }
  return std::sqrt(sq);
}

ChaosBitensor dagger(const ChaosBitensor& U) {
  ChaosBitensor out{U.grid, {}};
  for (const auto& [key, t] : U.components) {
    // (sum x (x) y)^dagger = sum y* (x) x*: on the merged tensor the two leg
    // adjoints plus the leg swap compose to one full-tuple mirror involution.
    accumulate(out, {key.second, key.first}, involution(t));
  }
  return out;
}

ChaosBitensor bimodule_action(const ChaosElement& Yleft, const ChaosBitensor& U,
                              const ChaosElement& Yright) {
  require_same_grid(Yleft.grid, U.grid, "bimodule_action");
  require_same_grid(U.grid, Yright.grid, "bimodule_action");
  ChaosBitensor lhs{U.grid, {}};
  for (const auto& [n, f] : Yleft.degrees) {
    for (const auto& [key, C] : U.components) {
      left_multiply_into(lhs, f, n, C, key.first, key.second);
    }
  }
  ChaosBitensor out{U.grid, {}};
  for (const auto& [key, C] : lhs.components) {
    for (const auto& [k, g] : Yright.degrees) {
      right_multiply_into(out, C, key.first, key.second, g, k);
    }
  }
  return out;
}

ChaosElement sharp_product(const ChaosBitensor& U, const ChaosElement& z) {
  require_same_grid(U.grid, z.grid, "sharp_product");
  const GridSpec& grid = U.grid;
  const int m = grid.cells;
  ChaosElement out = chaos_zero(grid);
  // (x (x) y) # I_c(g) = x * I_c(g) * y expands over contraction orders p
  // (x against g) and q (y against what remains). On the merged component
  // the paired slots sit in five contiguous groups:
  //   C = [ t (a-p-d) | r_1..r_d | s_1..s_p | r_q..r_1 | w (b-q) ]
  //   g = [ s_p..s_1 | u (c-p-e) | r_{d+1}..r_q ]
  // with d = max(0, q-(c-p)) the overshoot of q past g's free slots and
  // e = q-d; the result keeps [t | u | w].
  for (const auto& [key, C] : U.components) {
    const int a = key.first;
    const int b = key.second;
    for (const auto& [c, g] : z.degrees) {
      const int pmax = a < c ? a : c;
      for (int p = 0; p <= pmax; ++p) {
        const int qcap = a + c - 2 * p;
        const int qmax = b < qcap ? b : qcap;
        for (int q = 0; q <= qmax; ++q) {
          const int d = std::max(0, q - (c - p));
          const int e = q - d;
          const int af = a - p - d;
          const int gm = c - p - e;
          const int bf = b - q;
          const std::size_t sz_t = tensor_size(grid, af);
          const std::size_t sz_u = tensor_size(grid, gm);
          const std::size_t sz_w = tensor_size(grid, bf);
          const std::size_t sz_s = tensor_size(grid, p);
          const std::size_t sz_r = tensor_size(grid, q);
          const std::size_t sz_d = tensor_size(grid, d);
          const std::size_t sz_e = tensor_size(grid, e);
          CoeffTensor term = zero_tensor(grid, af + gm + bf);
          for (std::size_t r = 0; r < sz_r; ++r) {
            const std::size_t r_head = r / sz_e;
            const std::size_t r_tail = r % sz_e;
            const std::size_t rev_r = reversed_flat_index(r, m, q);
            for (std::size_t s = 0; s < sz_s; ++s) {
              const std::size_t rev_s = reversed_flat_index(s, m, p);
              for (std::size_t t = 0; t < sz_t; ++t) {
                for (std::size_t u = 0; u < sz_u; ++u) {
                  const Complex gv = g.c[(rev_s * sz_u + u) * sz_e + r_tail];
                  if (gv == Complex(0.0, 0.0)) continue;
                  const std::size_t c_base =
                      (((t * sz_d + r_head) * sz_s + s) * sz_r + rev_r) * sz_w;
                  const std::size_t o_base = (t * sz_u + u) * sz_w;
                  for (std::size_t w = 0; w < sz_w; ++w) {
                    term.c[o_base + w] += C.c[c_base + w] * gv;
                  }
                }
              }
            }
          }
          accumulate(out, term);
        }
      }
    }
  }
  return out;
}

ChaosBitensor directional_gradient(const ChaosElement& Y, const CoeffTensor& h) {
  require_direction(Y.grid, h, "directional_gradient");
  const GridSpec& grid = Y.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  ChaosBitensor out{grid, {}};
  for (const auto& [n, f] : Y.degrees) {
    for (int k = 1; k <= n; ++k) {
      const std::size_t sz_head = tensor_size(grid, k - 1);
      const std::size_t sz_tail = tensor_size(grid, n - k);
      CoeffTensor term = zero_tensor(grid, n - 1);
      for (std::size_t head = 0; head < sz_head; ++head) {
        for (std::size_t s = 0; s < m; ++s) {
          const Complex hv = std::conj(h.c[s]);
          if (hv == Complex(0.0, 0.0)) continue;
          for (std::size_t tail = 0; tail < sz_tail; ++tail) {
            term.c[head * sz_tail + tail] +=
                f.c[(head * m + s) * sz_tail + tail] * hv;
          }
        }
      }
      accumulate(out, {k - 1, n - k}, term);
    }
  }
  return out;
}

ChaosElement directional_divergence(const ChaosBitensor& U, const CoeffTensor& h) {
  require_direction(U.grid, h, "directional_divergence");
  const GridSpec& grid = U.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  ChaosElement out = chaos_zero(grid);
  for (const auto& [key, C] : U.components) {
    const int a = key.first;
    const int b = key.second;
    const std::size_t sz_a = tensor_size(grid, a);
    const std::size_t sz_b = tensor_size(grid, b);
    CoeffTensor term = zero_tensor(grid, a + 1 + b);
    for (std::size_t t = 0; t < sz_a; ++t) {
      for (std::size_t j = 0; j < m; ++j) {
        if (h.c[j] == Complex(0.0, 0.0)) continue;
        for (std::size_t u = 0; u < sz_b; ++u) {
          term.c[(t * m + j) * sz_b + u] += C.c[t * sz_b + u] * h.c[j];
        }
      }
    }
    accumulate(out, term);
  }
  return out;
}

SimpleBiprocess gradient_biprocess(const ChaosElement& Y) {
  const double scale = std::sqrt(1.0 / Y.grid.cell_width());
  SimpleBiprocess U{Y.grid, {}};
  U.values.reserve(static_cast<std::size_t>(Y.grid.cells));
  for (int i = 0; i < Y.grid.cells; ++i) {
    U.values.push_back(Complex(scale, 0.0) *
                       directional_gradient(Y, basis_vector(Y.grid, i)));
  }
  return U;
}

ChaosBitensor biprocess_pair(const SimpleBiprocess& U, const CoeffTensor& h) {
  require_biprocess(U, "biprocess_pair");
  require_direction(U.grid, h, "biprocess_pair");
  const double scale = std::sqrt(U.grid.cell_width());
  ChaosBitensor out{U.grid, {}};
  for (int i = 0; i < U.grid.cells; ++i) {
    const Complex weight = scale * std::conj(h.c[static_cast<std::size_t>(i)]);
    out = out + weight * U.values[static_cast<std::size_t>(i)];
  }
  return out;
}

ChaosElement divergence_simple(const SimpleBiprocess& U) {
  require_biprocess(U, "divergence_simple");
  const double scale = std::sqrt(U.grid.cell_width());
  ChaosElement out = chaos_zero(U.grid);
  for (int i = 0; i < U.grid.cells; ++i) {
    out = out + Complex(scale, 0.0) *
                    directional_divergence(U.values[static_cast<std::size_t>(i)],
                                           basis_vector(U.grid, i));
  }
  return out;
}

bool is_adapted(const SimpleBiprocess& U) {
  require_biprocess(U, "is_adapted");
  const int m = U.grid.cells;
  for (int i = 0; i < m; ++i) {
    for (const auto& [key, C] : U.values[static_cast<std::size_t>(i)].components) {
      const int deg = key.first + key.second;
      for (std::size_t flat = 0; flat < C.c.size(); ++flat) {
        if (C.c[flat] == Complex(0.0, 0.0)) continue;
        std::size_t rest = flat;
        for (int slot = 0; slot < deg; ++slot) {
          if (static_cast<int>(rest % static_cast<std::size_t>(m)) >= i) return false;
          rest /= static_cast<std::size_t>(m);
        }
      }
    }
  }
  return true;
}

ChaosElement stochastic_integral(const SimpleBiprocess& U) {
  require_biprocess(U, "stochastic_integral");
  if (!is_adapted(U)) {
    throw std::invalid_argument("stochastic_integral: biprocess is not adapted");
  }
  const double scale = std::sqrt(U.grid.cell_width());
  ChaosElement out = chaos_zero(U.grid);
  for (int i = 0; i < U.grid.cells; ++i) {
    // Free Brownian increment of cell i: I_1((T/m)^{1/2} e_i).
    const ChaosElement dS =
        chaos_from_tensor(Complex(scale, 0.0) * basis_vector(U.grid, i));
    out = out + sharp_product(U.values[static_cast<std::size_t>(i)], dS);
  }
  return out;
}

double b2_norm(const SimpleBiprocess& U) {
  require_biprocess(U, "b2_norm");
  double sq = 0.0;
  for (const ChaosBitensor& V : U.values) {
    const double nrm = bitensor_norm(V);
    sq += nrm * nrm;
  }
  return std::sqrt(U.grid.cell_width() * sq);
}

ChaosElement number_operator(const ChaosElement& Y) {
  ChaosElement out = chaos_zero(Y.grid);
  for (const auto& [n, f] : Y.degrees) {
    if (n == 0) continue;
    accumulate(out, Complex(static_cast<double>(n), 0.0) * f);
  }
  return out;
}

ChaosElement partial_trace(const ChaosBitensor& U, TraceSide side) {
  ChaosElement out = chaos_zero(U.grid);
  for (const auto& [key, C] : U.components) {
    if (side == TraceSide::right && key.second == 0) {
      accumulate(out, C);
    } else if (side == TraceSide::left && key.first == 0) {
      accumulate(out, C);
    }
  }
  return out;
}

ChaosTritensor gradient_left_leg(const ChaosBitensor& U, const CoeffTensor& h) {
  require_direction(U.grid, h, "gradient_left_leg");
  const GridSpec& grid = U.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  ChaosTritensor out;
  for (const auto& [key, C] : U.components) {
    const int a = key.first;
    const int b = key.second;
    const std::size_t sz_b = tensor_size(grid, b);
    for (int k = 1; k <= a; ++k) {
      const std::size_t sz_head = tensor_size(grid, k - 1);
      const std::size_t sz_mid = tensor_size(grid, a - k);
      CoeffTensor term = zero_tensor(grid, a - 1 + b);
      for (std::size_t head = 0; head < sz_head; ++head) {
        for (std::size_t s = 0; s < m; ++s) {
          const Complex hv = std::conj(h.c[s]);
          if (hv == Complex(0.0, 0.0)) continue;
          for (std::size_t mid = 0; mid < sz_mid; ++mid) {
            for (std::size_t w = 0; w < sz_b; ++w) {
              term.c[(head * sz_mid + mid) * sz_b + w] +=
                  C.c[(((head * m + s) * sz_mid) + mid) * sz_b + w] * hv;
            }
          }
        }
      }
      accumulate(out, {k - 1, a - k, b}, term);
    }
  }
  return out;
}

ChaosTritensor gradient_right_leg(const ChaosBitensor& U, const CoeffTensor& h) {
  require_direction(U.grid, h, "gradient_right_leg");
  const GridSpec& grid = U.grid;
  const std::size_t m = static_cast<std::size_t>(grid.cells);
  ChaosTritensor out;
  for (const auto& [key, C] : U.components) {
    const int a = key.first;
    const int b = key.second;
    const std::size_t sz_a = tensor_size(grid, a);
    for (int k = 1; k <= b; ++k) {
      const std::size_t sz_head = tensor_size(grid, k - 1);
      const std::size_t sz_tail = tensor_size(grid, b - k);
      CoeffTensor term = zero_tensor(grid, a + b - 1);
      for (std::size_t l = 0; l < sz_a; ++l) {
        for (std::size_t head = 0; head < sz_head; ++head) {
          for (std::size_t s = 0; s < m; ++s) {
            const Complex hv = std::conj(h.c[s]);
            if (hv == Complex(0.0, 0.0)) continue;
            for (std::size_t tail = 0; tail < sz_tail; ++tail) {
              term.c[(l * sz_head + head) * sz_tail + tail] +=
                  C.c[(((l * sz_head + head) * m) + s) * sz_tail + tail] * hv;
            }
          }
        }
      }
      accumulate(out, {a, k - 1, b - k}, term);
    }
  }
  return out;
}

double tritensor_distance(const ChaosTritensor& A, const ChaosTritensor& B) {
  double dist = 0.0;
  for (const auto& [key, t] : A) {
    auto it = B.find(key);
    if (it == B.end()) {
      dist = std::max(dist, max_abs(t));
    } else {
      dist = std::max(dist, max_abs(t - it->second));
    }
  }
  for (const auto& [key, t] : B) {
    if (A.find(key) == A.end()) dist = std::max(dist, max_abs(t));
  }
  return dist;
}

}  // namespace wchaos
