/// @file linear_op.hpp
/// @brief Matrix-free linear operators with forward and transpose application.
///
/// Operators are never assembled densely: stencil, Kronecker, and diagonal
/// structure is captured in closures.  apply_transpose is the exact algebraic
/// transpose, so <v, A u> == <A^T v, u> up to roundoff for every kind.

#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <stdexcept>
#include <utility>
#include <vector>

namespace westv {

class LinearOp {
public:
    enum class Kind { circulant_stencil, kronecker, diagonal, block };

    using ApplyFn = std::function<void(const double* in, double* out)>;

    LinearOp() = default;
    LinearOp(Kind kind, std::size_t rows, std::size_t cols, ApplyFn fwd, ApplyFn tr)
        : kind_(kind), rows_(rows), cols_(cols), fwd_(std::move(fwd)), tr_(std::move(tr)) {}

    static LinearOp diagonal(std::vector<double> entries);

    Kind kind() const { return kind_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    std::vector<double> apply(const std::vector<double>& u) const {
        if (u.size() != cols_) throw std::invalid_argument("LinearOp::apply: size mismatch");
        std::vector<double> out(rows_, 0.0);
        fwd_(u.data(), out.data());
        return out;
    }

    std::vector<double> apply_transpose(const std::vector<double>& v) const {
        if (v.size() != rows_) throw std::invalid_argument("LinearOp::apply_transpose: size mismatch");
        std::vector<double> out(cols_, 0.0);
        tr_(v.data(), out.data());
        return out;
    }

    /// In-place variants for hot loops; out must be zero-initialized or
    /// overwritten entirely by the closure (our closures overwrite).
    void apply_into(const double* in, double* out) const { fwd_(in, out); }
    void apply_transpose_into(const double* in, double* out) const { tr_(in, out); }

    /// Diagonal entries; only valid for Kind::diagonal.
    const std::vector<double>& diagonal_entries() const {
        if (kind_ != Kind::diagonal)
            throw std::logic_error("LinearOp::diagonal_entries: operator is not diagonal");
        return diag_;
    }

private:
    Kind kind_ = Kind::diagonal;
    std::size_t rows_ = 0, cols_ = 0;
    ApplyFn fwd_, tr_;
    std::vector<double> diag_;
};

inline LinearOp LinearOp::diagonal(std::vector<double> entries) {
    const std::size_t n = entries.size();
    auto d = std::make_shared<std::vector<double>>(std::move(entries));
    auto mul = [d, n](const double* in, double* out) {
        for (std::size_t i = 0; i < n; ++i) out[i] = (*d)[i] * in[i];
    };
    LinearOp op(Kind::diagonal, n, n, mul, mul);
    op.diag_ = *d;
    return op;
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

}  // namespace westv
