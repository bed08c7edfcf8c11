#include "cat0/linalg.hpp"

namespace cat0 {

namespace {

// Row-reduce [a | b]; returns pivot column of each row (-1 past rank).
struct Reduced {
    MatQ a;
    MatQ b;  // may have zero columns
    std::vector<int> pivot_col;
    int rank = 0;
};

Reduced reduce(MatQ a, MatQ b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    Reduced r;
    size_t row = 0;
    std::vector<int> pivots;
    for (size_t col = 0; col < cols && row < rows; ++col) {
        size_t sel = row;
        while (sel < rows && a[sel][col] == 0) ++sel;
        if (sel == rows) continue;
        std::swap(a[sel], a[row]);
        if (!b.empty()) std::swap(b[sel], b[row]);
        Rat inv = Rat(1) / a[row][col];
        for (size_t j = col; j < cols; ++j) a[row][j] *= inv;
        if (!b.empty())
            for (auto& v : b[row]) v *= inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == row || a[i][col] == 0) continue;
            Rat f = a[i][col];
            for (size_t j = col; j < cols; ++j) a[i][j] -= f * a[row][j];
            if (!b.empty())
                for (size_t j = 0; j < b[i].size(); ++j) b[i][j] -= f * b[row][j];
        }
        pivots.push_back(int(col));
        ++row;
    }
    r.a = std::move(a);
    r.b = std::move(b);
    r.pivot_col = std::move(pivots);
    r.rank = int(row);
    return r;
}

}  // namespace

std::optional<VecQ> solve(MatQ a, VecQ b) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    MatQ bb(rows, VecQ(1));
    for (size_t i = 0; i < rows; ++i) bb[i][0] = b[i];
    Reduced r = reduce(std::move(a), std::move(bb));
    // inconsistency: zero row with nonzero rhs
    for (size_t i = r.rank; i < rows; ++i)
        if (r.b[i][0] != 0) return std::nullopt;
    VecQ x(cols, Rat(0));
    for (int i = 0; i < r.rank; ++i) x[r.pivot_col[i]] = r.b[i][0];
    return x;
}

std::vector<VecQ> kernel_basis(MatQ a) {
    size_t rows = a.size();
    size_t cols = rows ? a[0].size() : 0;
    Reduced r = reduce(std::move(a), {});
    std::vector<bool> is_pivot(cols, false);
    for (int p : r.pivot_col) is_pivot[p] = true;
    std::vector<VecQ> basis;
    for (size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        VecQ v(cols, Rat(0));
        v[free] = 1;
        for (int i = 0; i < r.rank; ++i) v[r.pivot_col[i]] = -r.a[i][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<MatQ> inverse(MatQ a) {
    size_t n = a.size();
    Reduced r = reduce(std::move(a), identity(int(n)));
    if (r.rank < int(n)) return std::nullopt;
    return r.b;
}

int mat_rank(MatQ a) {
    return reduce(std::move(a), {}).rank;
}

}  // namespace cat0
