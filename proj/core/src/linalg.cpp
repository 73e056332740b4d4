#include "gtl/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace gtl {

int rank(std::vector<std::vector<Integer>> a)
{
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return 0;
    const int cols = static_cast<int>(a[0].size());
    Integer prev = 1;
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        for (int i = r + 1; i < rows; ++i) {
            for (int j = c + 1; j < cols; ++j) {
                Integer v = a[i][j] * a[r][c] - a[i][c] * a[r][j];
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                a[i][j] = v;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        ++r;
    }
    return r;
}

int rank(const Matrix& a)
{
    std::vector<std::vector<Integer>> m;
    m.reserve(a.size());
    for (const auto& row : a) {
        Integer den = 1;
        for (const auto& x : row) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
        std::vector<Integer> out;
        out.reserve(row.size());
        for (const auto& x : row) out.emplace_back(x.get_num() * (den / x.get_den()));
        m.push_back(std::move(out));
    }
    return rank(std::move(m));
}

std::vector<int> rref(Matrix& a)
{
    std::vector<int> pivots;
    const int rows = static_cast<int>(a.size());
    if (rows == 0) return pivots;
    const int cols = static_cast<int>(a[0].size());
    int r = 0;
    for (int c = 0; c < cols && r < rows; ++c) {
        int p = r;
        while (p < rows && sgn(a[p][c]) == 0) ++p;
        if (p == rows) continue;
        std::swap(a[p], a[r]);
        const Rational inv = 1 / a[r][c];
        for (auto& x : a[r]) x *= inv;
        for (int i = 0; i < rows; ++i) {
            if (i == r || sgn(a[i][c]) == 0) continue;
            const Rational f = a[i][c];
            for (int j = c; j < cols; ++j) a[i][j] -= f * a[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

std::vector<Vector> kernel(const Matrix& a, int cols)
{
    Matrix m = a;
    for (const auto& row : m)
        if (static_cast<int>(row.size()) != cols) throw std::invalid_argument("kernel: ragged matrix");
    const std::vector<int> pivots = rref(m);
    std::vector<char> is_pivot(cols, 0);
    for (int c : pivots) is_pivot[c] = 1;
    std::vector<Vector> basis;
    for (int f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        Vector v(cols, 0);
        v[f] = 1;
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -m[r][f];
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<Vector> solve(const Matrix& a, const Vector& b, int cols)
{
    if (a.size() != b.size()) throw std::invalid_argument("solve: size mismatch");
    Matrix m = a;
    for (std::size_t i = 0; i < m.size(); ++i) m[i].push_back(b[i]);
    const std::vector<int> pivots = rref(m);
    if (!pivots.empty() && pivots.back() == cols) return std::nullopt;
    Vector x(cols, 0);
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = m[r][cols];
    return x;
}

}  // namespace gtl
