#ifndef CAT0_LINALG_HPP
#define CAT0_LINALG_HPP

#include <optional>
#include <stdexcept>
#include <vector>

#include "cat0/rational.hpp"

namespace cat0 {

// Dense exact linear algebra for the tiny systems that appear in the
// Euclidean predicates (n <= 4 throughout).

using VecQ = std::vector<Rat>;
using MatQ = std::vector<VecQ>;  // row major

inline MatQ identity(int n) {
    MatQ m(n, VecQ(n, Rat(0)));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline VecQ vec_sub(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline VecQ vec_add(const VecQ& a, const VecQ& b) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline VecQ vec_scale(const Rat& s, const VecQ& a) {
    VecQ r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline VecQ mat_apply(const MatQ& m, const VecQ& x) {
    VecQ r(m.size(), Rat(0));
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t j = 0; j < x.size(); ++j) r[i] += m[i][j] * x[j];
    return r;
}

inline MatQ mat_mul(const MatQ& a, const MatQ& b) {
    size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
    MatQ r(n, VecQ(m, Rat(0)));
    for (size_t i = 0; i < n; ++i)
        for (size_t l = 0; l < k; ++l) {
            if (a[i][l] == 0) continue;
            for (size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
        }
    return r;
}

inline MatQ mat_transpose(const MatQ& a) {
    if (a.empty()) return {};
    MatQ r(a[0].size(), VecQ(a.size()));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < a[0].size(); ++j) r[j][i] = a[i][j];
    return r;
}

// x^T G y
inline Rat bilinear(const MatQ& g, const VecQ& x, const VecQ& y) {
    Rat s = 0;
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size(); ++j)
            if (g[i][j] != 0) s += x[i] * g[i][j] * y[j];
    return s;
}

// Solve A x = b.  Returns nullopt when inconsistent; when the system is
// underdetermined, free variables are set to zero (deterministic pivoting).
std::optional<VecQ> solve(MatQ a, VecQ b);

// Basis of the kernel of A (deterministic: free variables in index order).
std::vector<VecQ> kernel_basis(MatQ a);

std::optional<MatQ> inverse(MatQ a);

int mat_rank(MatQ a);

}  // namespace cat0

#endif
