#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "scott/gf.hpp"

namespace scott {

// Dense matrix over a shared GField. Vectors are rows and maps act on the
// right, v -> v * M, matching the composition order of Perm.
class Mat {
public:
    using Elt = GField::Elt;

    Mat() = default;

    Mat(FieldPtr f, uint32_t rows, uint32_t cols)
        : f_(std::move(f)), rows_(rows), cols_(cols),
          a_(static_cast<size_t>(rows) * cols, 0) {}

    static Mat identity(FieldPtr f, uint32_t n) {
        Mat m(std::move(f), n, n);
        for (uint32_t i = 0; i < n; ++i) m.at(i, i) = m.f_->one();
        return m;
    }

    const FieldPtr& field() const { return f_; }
    uint32_t rows() const { return rows_; }
    uint32_t cols() const { return cols_; }

    Elt at(uint32_t i, uint32_t j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }
    Elt& at(uint32_t i, uint32_t j) { return a_[static_cast<size_t>(i) * cols_ + j]; }

    bool is_zero() const {
        for (Elt x : a_)
            if (x != 0) return false;
        return true;
    }

    bool operator==(const Mat& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }
    bool operator!=(const Mat& o) const { return !(*this == o); }

    Mat operator+(const Mat& o) const {
        check_shape(o, rows_, cols_);
        Mat r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->add(a_[i], o.a_[i]);
        return r;
    }

    Mat operator-(const Mat& o) const {
        check_shape(o, rows_, cols_);
        Mat r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->sub(a_[i], o.a_[i]);
        return r;
    }

    Mat operator*(const Mat& o) const {
        if (cols_ != o.rows_ || !same_field(*f_, *o.f_))
            throw std::invalid_argument("Mat: shape mismatch in product");
        Mat r(f_, rows_, o.cols_);
        for (uint32_t i = 0; i < rows_; ++i)
            for (uint32_t k = 0; k < cols_; ++k) {
                Elt x = at(i, k);
                if (x == 0) continue;
                for (uint32_t j = 0; j < o.cols_; ++j) {
                    Elt y = o.at(k, j);
                    if (y != 0) r.at(i, j) = f_->add(r.at(i, j), f_->mul(x, y));
                }
            }
        return r;
    }

    Mat scaled(Elt c) const {
        Mat r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = f_->mul(a_[i], c);
        return r;
    }

    Mat transpose() const {
        Mat r(f_, cols_, rows_);
        for (uint32_t i = 0; i < rows_; ++i)
            for (uint32_t j = 0; j < cols_; ++j) r.at(j, i) = at(i, j);
        return r;
    }

    Elt trace() const {
        if (rows_ != cols_) throw std::invalid_argument("Mat: trace of non-square");
        Elt t = 0;
        for (uint32_t i = 0; i < rows_; ++i) t = f_->add(t, at(i, i));
        return t;
    }

    Mat row(uint32_t i) const {
        Mat r(f_, 1, cols_);
        for (uint32_t j = 0; j < cols_; ++j) r.at(0, j) = at(i, j);
        return r;
    }

    void set_row(uint32_t i, const Mat& r) {
        for (uint32_t j = 0; j < cols_; ++j) at(i, j) = r.at(0, j);
    }

    Mat map_entries(const std::function<Elt(Elt)>& fn) const {
        Mat r(f_, rows_, cols_);
        for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = fn(a_[i]);
        return r;
    }

private:
    FieldPtr f_;
    uint32_t rows_ = 0, cols_ = 0;
    std::vector<Elt> a_;

    void check_shape(const Mat& o, uint32_t r, uint32_t c) const {
        if (o.rows_ != r || o.cols_ != c || !same_field(*f_, *o.f_))
            throw std::invalid_argument("Mat: shape mismatch");
    }
};

inline Mat vstack(const Mat& a, const Mat& b) {
    if (a.cols() != b.cols()) throw std::invalid_argument("vstack: column mismatch");
    Mat r(a.field(), a.rows() + b.rows(), a.cols());
    for (uint32_t i = 0; i < a.rows(); ++i)
        for (uint32_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
    for (uint32_t i = 0; i < b.rows(); ++i)
        for (uint32_t j = 0; j < b.cols(); ++j) r.at(a.rows() + i, j) = b.at(i, j);
    return r;
}

inline Mat hstack(const Mat& a, const Mat& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack: row mismatch");
    Mat r(a.field(), a.rows(), a.cols() + b.cols());
    for (uint32_t i = 0; i < a.rows(); ++i) {
        for (uint32_t j = 0; j < a.cols(); ++j) r.at(i, j) = a.at(i, j);
        for (uint32_t j = 0; j < b.cols(); ++j) r.at(i, a.cols() + j) = b.at(i, j);
    }
    return r;
}

// Reduced row echelon form. Nonzero rows only, pivots strictly increasing,
// pivot entries 1 with zeros above and below. This is the canonical basis
// used for every subspace the library hands out, so equal subspaces compare
// equal as matrices.
struct Echelon {
    Mat basis;                     // rank x cols
    std::vector<uint32_t> pivots;  // pivot column per row
    uint32_t rank() const { return static_cast<uint32_t>(pivots.size()); }

    // Reduces v against the basis in place; returns true if it hit zero.
    bool reduce(Mat& v) const {
        const GField& f = *basis.field();
        for (uint32_t r = 0; r < rank(); ++r) {
            Elt c = v.at(0, pivots[r]);
            if (c == 0) continue;
            for (uint32_t j = 0; j < v.cols(); ++j)
                v.at(0, j) = f.sub(v.at(0, j), f.mul(c, basis.at(r, j)));
        }
        return v.is_zero();
    }

    bool contains_row(const Mat& v) const {
        Mat t = v;
        return reduce(t);
    }

    // Coefficients c with v = c * basis, if v lies in the row space.
    std::optional<Mat> coords(const Mat& v) const {
        Mat t = v;
        Mat c(basis.field(), 1, rank());
        for (uint32_t r = 0; r < rank(); ++r) c.at(0, r) = t.at(0, pivots[r]);
        if (!reduce(t)) return std::nullopt;
        return c;
    }

    using Elt = GField::Elt;
};

inline Echelon echelon(const Mat& m) {
    Mat w = m;
    const GField& f = *w.field();
    std::vector<uint32_t> pivots;
    uint32_t r = 0;
    for (uint32_t c = 0; c < w.cols() && r < w.rows(); ++c) {
        uint32_t sel = w.rows();
        for (uint32_t i = r; i < w.rows(); ++i)
            if (w.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel == w.rows()) continue;
        if (sel != r)
            for (uint32_t j = 0; j < w.cols(); ++j) std::swap(w.at(sel, j), w.at(r, j));
        GField::Elt inv = f.inv(w.at(r, c));
        for (uint32_t j = 0; j < w.cols(); ++j) w.at(r, j) = f.mul(w.at(r, j), inv);
        for (uint32_t i = 0; i < w.rows(); ++i) {
            if (i == r) continue;
            GField::Elt x = w.at(i, c);
            if (x == 0) continue;
            for (uint32_t j = 0; j < w.cols(); ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(x, w.at(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    Mat basis(w.field(), r, w.cols());
    for (uint32_t i = 0; i < r; ++i)
        for (uint32_t j = 0; j < w.cols(); ++j) basis.at(i, j) = w.at(i, j);
    return {std::move(basis), std::move(pivots)};
}

inline uint32_t rank(const Mat& m) { return echelon(m).rank(); }

inline Mat row_space_basis(const Mat& m) { return echelon(m).basis; }

inline bool same_row_space(const Mat& a, const Mat& b) {
    return row_space_basis(a) == row_space_basis(b);
}

// Basis of { v : v * m = 0 }, canonical.
inline Mat kernel_basis(const Mat& m) {
    // v * m = 0 iff m^T * v^T = 0; read special solutions off rref(m^T).
    Echelon e = echelon(m.transpose());
    const GField& f = *m.field();
    uint32_t n = m.rows();
    std::vector<bool> is_pivot(n, false);
    for (uint32_t c : e.pivots) is_pivot[c] = true;
    Mat out(m.field(), n - e.rank(), n);
    uint32_t r = 0;
    for (uint32_t j = 0; j < n; ++j) {
        if (is_pivot[j]) continue;
        out.at(r, j) = f.one();
        for (uint32_t i = 0; i < e.rank(); ++i)
            out.at(r, e.pivots[i]) = f.neg(e.basis.at(i, j));
        ++r;
    }
    return row_space_basis(out);
}

// Basis of the joint kernel { v : v * m_i = 0 for all i }.
inline Mat kernel_of_all(const std::vector<Mat>& ms) {
    if (ms.empty()) throw std::invalid_argument("kernel_of_all: empty list");
    Mat big = ms[0];
    for (size_t i = 1; i < ms.size(); ++i) big = hstack(big, ms[i]);
    return kernel_basis(big);
}

inline Mat inverse(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("inverse: non-square");
    if (m.rows() == 0) return m;
    Echelon e = echelon(hstack(m, Mat::identity(m.field(), m.rows())));
    if (e.rank() != m.rows() || e.pivots.back() >= m.rows())
        throw std::invalid_argument("inverse: singular matrix");
    Mat r(m.field(), m.rows(), m.cols());
    for (uint32_t i = 0; i < m.rows(); ++i)
        for (uint32_t j = 0; j < m.cols(); ++j) r.at(i, j) = e.basis.at(i, m.cols() + j);
    return r;
}

inline GField::Elt determinant(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("determinant: non-square");
    Mat w = m;
    const GField& f = *w.field();
    GField::Elt det = f.one();
    uint32_t n = w.rows();
    for (uint32_t c = 0; c < n; ++c) {
        uint32_t sel = n;
        for (uint32_t i = c; i < n; ++i)
            if (w.at(i, c) != 0) {
                sel = i;
                break;
            }
        if (sel == n) return f.zero();
        if (sel != c) {
            for (uint32_t j = 0; j < n; ++j) std::swap(w.at(sel, j), w.at(c, j));
            det = f.neg(det);
        }
        det = f.mul(det, w.at(c, c));
        GField::Elt inv = f.inv(w.at(c, c));
        for (uint32_t i = c + 1; i < n; ++i) {
            GField::Elt x = f.mul(w.at(i, c), inv);
            if (x == 0) continue;
            for (uint32_t j = c; j < n; ++j)
                w.at(i, j) = f.sub(w.at(i, j), f.mul(x, w.at(c, j)));
        }
    }
    return det;
}

// Smallest subspace containing the rows of seed and stable under right
// multiplication by every action matrix. Canonical basis.
inline Mat spin(const Mat& seed, const std::vector<Mat>& action) {
    Echelon e = echelon(seed);
    std::vector<Mat> fresh;
    for (uint32_t i = 0; i < e.rank(); ++i) fresh.push_back(e.basis.row(i));
    Mat all = e.basis;
    while (!fresh.empty()) {
        std::vector<Mat> next;
        for (const Mat& v : fresh)
            for (const Mat& g : action) {
                Mat w = v * g;
                if (!e.contains_row(w)) {
                    all = vstack(all, w);
                    e = echelon(all);
                    next.push_back(w);
                }
            }
        fresh = std::move(next);
    }
    return e.basis;
}

inline Mat submatrix(const Mat& m, const std::vector<uint32_t>& rows,
                     const std::vector<uint32_t>& cols) {
    Mat r(m.field(), static_cast<uint32_t>(rows.size()), static_cast<uint32_t>(cols.size()));
    for (uint32_t i = 0; i < rows.size(); ++i)
        for (uint32_t j = 0; j < cols.size(); ++j) r.at(i, j) = m.at(rows[i], cols[j]);
    return r;
}

// Flattened n x n matrix <-> row of length n^2, row-major.
inline Mat flatten(const Mat& m) {
    Mat r(m.field(), 1, m.rows() * m.cols());
    for (uint32_t i = 0; i < m.rows(); ++i)
        for (uint32_t j = 0; j < m.cols(); ++j) r.at(0, i * m.cols() + j) = m.at(i, j);
    return r;
}

inline Mat unflatten(const Mat& v, uint32_t rows, uint32_t cols) {
    Mat r(v.field(), rows, cols);
    for (uint32_t i = 0; i < rows; ++i)
        for (uint32_t j = 0; j < cols; ++j) r.at(i, j) = v.at(0, i * cols + j);
    return r;
}

inline Mat unflatten(const Mat& v, uint32_t n) { return unflatten(v, n, n); }

// Basis of { X : A X = X A for every A in gens }, rows flattened, canonical.
// Cost grows like n^6, so this is the small-instance path and the oracle for
// the faster structured computations elsewhere.
inline Mat solve_commutant(const std::vector<Mat>& gens, uint32_t n, const FieldPtr& f) {
    if (gens.empty()) {
        Mat full(f, n * n, n * n);
        for (uint32_t i = 0; i < n * n; ++i) full.at(i, i) = f->one();
        return full;
    }
    const GField& fld = *f;
    // Equation (A X - X A)_{ij} = 0; unknown row index (k,l), column (g,i,j).
    std::vector<Mat> blocks;
    for (const Mat& a : gens) {
        Mat blk(f, n * n, n * n);
        for (uint32_t i = 0; i < n; ++i)
            for (uint32_t j = 0; j < n; ++j)
                for (uint32_t k = 0; k < n; ++k)
                    for (uint32_t l = 0; l < n; ++l) {
                        GField::Elt c = 0;
                        if (l == j) c = fld.add(c, a.at(i, k));
                        if (k == i) c = fld.sub(c, a.at(l, j));
                        if (c != 0) blk.at(k * n + l, i * n + j) = c;
                    }
        blocks.push_back(std::move(blk));
    }
    return kernel_of_all(blocks);
}

// Basis of { X (m x n) : A_t X = X B_t for every t }, rows flattened,
// canonical. Same layout as solve_commutant with distinct left/right actions.
inline Mat solve_intertwiner(const std::vector<Mat>& left, const std::vector<Mat>& right,
                             uint32_t m, uint32_t n, const FieldPtr& f) {
    if (left.size() != right.size())
        throw std::invalid_argument("solve_intertwiner: generator count mismatch");
    if (left.empty()) {
        Mat full(f, m * n, m * n);
        for (uint32_t i = 0; i < m * n; ++i) full.at(i, i) = f->one();
        return full;
    }
    const GField& fld = *f;
    std::vector<Mat> blocks;
    for (size_t t = 0; t < left.size(); ++t) {
        const Mat& a = left[t];
        const Mat& b = right[t];
        Mat blk(f, m * n, m * n);
        for (uint32_t i = 0; i < m; ++i)
            for (uint32_t j = 0; j < n; ++j)
                for (uint32_t k = 0; k < m; ++k)
                    for (uint32_t l = 0; l < n; ++l) {
                        GField::Elt c = 0;
                        if (l == j) c = fld.add(c, a.at(i, k));
                        if (k == i) c = fld.sub(c, b.at(l, j));
                        if (c != 0) blk.at(k * n + l, i * n + j) = c;
                    }
        blocks.push_back(std::move(blk));
    }
    return kernel_of_all(blocks);
}

// Characteristic polynomial, monic, coefficient index = degree. Uses a
// similarity reduction to Hessenberg form and the leading-minor recurrence.
inline std::vector<GField::Elt> char_poly(const Mat& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_poly: non-square");
    const GField& f = *m.field();
    uint32_t n = m.rows();
    if (n == 0) return {f.one()};
    Mat h = m;
    for (uint32_t j = 0; j + 2 < n; ++j) {
        uint32_t piv = n;
        for (uint32_t i = j + 1; i < n; ++i)
            if (h.at(i, j) != 0) {
                piv = i;
                break;
            }
        if (piv == n) continue;
        if (piv != j + 1) {
            for (uint32_t c = 0; c < n; ++c) std::swap(h.at(piv, c), h.at(j + 1, c));
            for (uint32_t r = 0; r < n; ++r) std::swap(h.at(r, piv), h.at(r, j + 1));
        }
        GField::Elt inv = f.inv(h.at(j + 1, j));
        for (uint32_t i = j + 2; i < n; ++i) {
            GField::Elt u = f.mul(h.at(i, j), inv);
            if (u == 0) continue;
            for (uint32_t c = 0; c < n; ++c)
                h.at(i, c) = f.sub(h.at(i, c), f.mul(u, h.at(j + 1, c)));
            for (uint32_t r = 0; r < n; ++r)
                h.at(r, j + 1) = f.add(h.at(r, j + 1), f.mul(u, h.at(r, i)));
        }
    }
    // p_k = (x - h[k-1][k-1]) p_{k-1} - sum over lower minors with the
    // subdiagonal product chain.
    std::vector<std::vector<GField::Elt>> p(n + 1);
    p[0] = {f.one()};
    for (uint32_t k = 1; k <= n; ++k) {
        const auto& prev = p[k - 1];
        std::vector<GField::Elt> cur(k + 1, 0);
        for (uint32_t d = 0; d < prev.size(); ++d) {
            cur[d + 1] = f.add(cur[d + 1], prev[d]);
            cur[d] = f.sub(cur[d], f.mul(h.at(k - 1, k - 1), prev[d]));
        }
        GField::Elt chain = f.one();
        for (uint32_t i = 1; i < k; ++i) {
            chain = f.mul(chain, h.at(k - i, k - i - 1));
            if (chain == 0) break;
            GField::Elt coef = f.mul(h.at(k - 1 - i, k - 1), chain);
            if (coef == 0) continue;
            const auto& pi = p[k - 1 - i];
            for (uint32_t d = 0; d < pi.size(); ++d)
                cur[d] = f.sub(cur[d], f.mul(coef, pi[d]));
        }
        p[k] = std::move(cur);
    }
    return p[n];
}

}  // namespace scott
