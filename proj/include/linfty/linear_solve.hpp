#pragma once

#include "linfty/rational.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace linfty {

/// Column order used when choosing pivots. Free variables are always set to zero,
/// so the order decides which particular solution an underdetermined system yields.
enum class PivotOrder { Lex, RevLex };

inline std::string to_string(PivotOrder p) { return p == PivotOrder::Lex ? "lex" : "revlex"; }

inline PivotOrder parse_pivot_order(const std::string& s)
{
    if (s == "lex") return PivotOrder::Lex;
    if (s == "revlex") return PivotOrder::RevLex;
    throw std::invalid_argument("unknown pivot order '" + s + "' (expected lex or revlex)");
}

/// Row-sparse exact matrix.
class SparseMatrix {
public:
    using Row = std::map<int, Rational>;

    SparseMatrix() = default;
    SparseMatrix(int rows, int cols) : cols_(cols), rows_(static_cast<std::size_t>(rows)) {}

    static SparseMatrix from_dense(const std::vector<std::vector<Rational>>& dense, int cols = -1)
    {
        int c = cols;
        if (c < 0) c = dense.empty() ? 0 : static_cast<int>(dense.front().size());
        SparseMatrix m(static_cast<int>(dense.size()), c);
        for (std::size_t i = 0; i < dense.size(); ++i) {
            if (static_cast<int>(dense[i].size()) != c) throw std::invalid_argument("ragged dense matrix");
            for (int j = 0; j < c; ++j)
                if (dense[i][static_cast<std::size_t>(j)] != 0) m.rows_[i][j] = dense[i][static_cast<std::size_t>(j)];
        }
        return m;
    }

    [[nodiscard]] int rows() const { return static_cast<int>(rows_.size()); }
    [[nodiscard]] int cols() const { return cols_; }

    int add_row()
    {
        rows_.emplace_back();
        return rows() - 1;
    }

    void add(int r, int c, const Rational& v)
    {
        if (c < 0 || c >= cols_ || r < 0 || r >= rows()) throw std::out_of_range("matrix index out of range");
        if (v == 0) return;
        auto& row = rows_[static_cast<std::size_t>(r)];
        auto [it, inserted] = row.emplace(c, v);
        if (!inserted) {
            it->second += v;
            if (it->second == 0) row.erase(it);
        }
    }

    [[nodiscard]] Rational at(int r, int c) const
    {
        const auto& row = rows_[static_cast<std::size_t>(r)];
        auto it = row.find(c);
        return it == row.end() ? Rational(0) : it->second;
    }

    [[nodiscard]] const Row& row(int r) const { return rows_[static_cast<std::size_t>(r)]; }

    [[nodiscard]] std::vector<Rational> multiply(const std::vector<Rational>& x) const
    {
        if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("dimension mismatch in multiply");
        std::vector<Rational> y(rows_.size());
        for (std::size_t i = 0; i < rows_.size(); ++i)
            for (const auto& [j, v] : rows_[i]) y[i] += v * x[static_cast<std::size_t>(j)];
        return y;
    }

    [[nodiscard]] std::vector<Rational> left_multiply(const std::vector<Rational>& y) const
    {
        if (static_cast<int>(y.size()) != rows()) throw std::invalid_argument("dimension mismatch in left_multiply");
        std::vector<Rational> x(static_cast<std::size_t>(cols_));
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            if (y[i] == 0) continue;
            for (const auto& [j, v] : rows_[i]) x[static_cast<std::size_t>(j)] += y[i] * v;
        }
        return x;
    }

private:
    int cols_ = 0;
    std::vector<Row> rows_;
};

/// Outcome of solve_linear: either a solution with Ax = b, or a certificate y with yA = 0, yb != 0.
struct SolveResult {
    bool consistent = false;
    std::vector<Rational> solution;
    std::vector<Rational> certificate;
};

namespace detail {

struct EliminationRow {
    SparseMatrix::Row a;
    Rational b;
    SparseMatrix::Row t;
};

inline void axpy(SparseMatrix::Row& dst, const Rational& factor, const SparseMatrix::Row& src)
{
    for (const auto& [j, v] : src) {
        auto [it, inserted] = dst.emplace(j, factor * v);
        if (!inserted) {
            it->second += factor * v;
            if (it->second == 0) dst.erase(it);
        }
    }
}

/// Gauss-Jordan reduction. Returns pivot column per row (-1 for non-pivot rows).
inline std::vector<int> reduce(std::vector<EliminationRow>& rows, int cols, PivotOrder order, bool track)
{
    std::vector<int> pivot_of_row(rows.size(), -1);
    std::vector<bool> used(rows.size(), false);
    for (int step = 0; step < cols; ++step) {
        int c = order == PivotOrder::Lex ? step : cols - 1 - step;
        int p = -1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (used[i]) continue;
            if (rows[i].a.count(c)) {
                p = static_cast<int>(i);
                break;
            }
        }
        if (p < 0) continue;
        auto& prow = rows[static_cast<std::size_t>(p)];
        Rational inv = 1 / prow.a.at(c);
        if (inv != 1) {
            for (auto& [j, v] : prow.a) v *= inv;
            prow.b *= inv;
            if (track)
                for (auto& [j, v] : prow.t) v *= inv;
        }
        used[static_cast<std::size_t>(p)] = true;
        pivot_of_row[static_cast<std::size_t>(p)] = c;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (static_cast<int>(i) == p) continue;
            auto it = rows[i].a.find(c);
            if (it == rows[i].a.end()) continue;
            Rational f = -it->second;
            axpy(rows[i].a, f, prow.a);
            rows[i].b += f * prow.b;
            if (track) axpy(rows[i].t, f, prow.t);
        }
    }
    return pivot_of_row;
}

inline std::vector<EliminationRow> load(const SparseMatrix& A, const std::vector<Rational>* b, bool track)
{
    std::vector<EliminationRow> rows(static_cast<std::size_t>(A.rows()));
    for (int i = 0; i < A.rows(); ++i) {
        rows[static_cast<std::size_t>(i)].a = A.row(i);
        if (b) rows[static_cast<std::size_t>(i)].b = (*b)[static_cast<std::size_t>(i)];
        if (track) rows[static_cast<std::size_t>(i)].t[i] = 1;
    }
    return rows;
}

} // namespace detail

/// Exact solve of Ax = b. Underdetermined systems return the particular solution with
/// all free variables zero under the given pivot order.
inline SolveResult solve_linear(const SparseMatrix& A, const std::vector<Rational>& b,
                                PivotOrder order = PivotOrder::Lex)
{
    if (static_cast<int>(b.size()) != A.rows())
        throw std::invalid_argument("solve_linear: matrix has " + std::to_string(A.rows()) +
                                    " rows but right-hand side has " + std::to_string(b.size()));
    auto rows = detail::load(A, &b, true);
    auto pivots = detail::reduce(rows, A.cols(), order, true);
    SolveResult res;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (pivots[i] < 0 && rows[i].b != 0) {
            res.consistent = false;
            res.certificate.assign(b.size(), Rational(0));
            for (const auto& [j, v] : rows[i].t) res.certificate[static_cast<std::size_t>(j)] = v;
            auto yA = A.left_multiply(res.certificate);
            Rational yb = 0;
            for (std::size_t k = 0; k < b.size(); ++k) yb += res.certificate[k] * b[k];
            for (const auto& v : yA)
                if (v != 0) throw std::logic_error("solve_linear: certificate failed yA = 0");
            if (yb == 0) throw std::logic_error("solve_linear: certificate failed yb != 0");
            return res;
        }
    }
    res.consistent = true;
    res.solution.assign(static_cast<std::size_t>(A.cols()), Rational(0));
    for (std::size_t i = 0; i < rows.size(); ++i)
        if (pivots[i] >= 0) res.solution[static_cast<std::size_t>(pivots[i])] = rows[i].b;
    auto Ax = A.multiply(res.solution);
    for (std::size_t i = 0; i < Ax.size(); ++i)
        if (Ax[i] != b[i]) throw std::logic_error("solve_linear: residual is nonzero");
    return res;
}

inline int rank(const SparseMatrix& A)
{
    auto rows = detail::load(A, nullptr, false);
    auto pivots = detail::reduce(rows, A.cols(), PivotOrder::Lex, false);
    int r = 0;
    for (int p : pivots) r += p >= 0;
    return r;
}

/// Basis of {x : Ax = 0}, one vector per free column (lex pivots), free entry 1.
inline std::vector<std::vector<Rational>> nullspace(const SparseMatrix& A)
{
    auto rows = detail::load(A, nullptr, false);
    auto pivots = detail::reduce(rows, A.cols(), PivotOrder::Lex, false);
    std::vector<bool> is_pivot(static_cast<std::size_t>(A.cols()), false);
    for (int p : pivots)
        if (p >= 0) is_pivot[static_cast<std::size_t>(p)] = true;
    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < A.cols(); ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<Rational> v(static_cast<std::size_t>(A.cols()));
        v[static_cast<std::size_t>(f)] = 1;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (pivots[i] < 0) continue;
            auto it = rows[i].a.find(f);
            if (it != rows[i].a.end()) v[static_cast<std::size_t>(pivots[i])] = -it->second;
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace linfty
