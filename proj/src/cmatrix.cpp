#include "surflift/cmatrix.hpp"

#include "surflift/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace surflift {

CMatrix CMatrix::identity(int n) {
    CMatrix m(n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
    return m;
}

CMatrix CMatrix::from(const std::vector<std::vector<cplx>>& rows) {
    int n = (int)rows.size();
    CMatrix m(n);
    for (int r = 0; r < n; ++r) {
        if ((int)rows[r].size() != n) throw ValidationError("matrix rows are not square");
        for (int c = 0; c < n; ++c) m.at(r, c) = rows[r][c];
    }
    return m;
}

CMatrix operator*(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.n_);
    for (int i = 0; i < a.n_; ++i)
        for (int k = 0; k < a.n_; ++k) {
            cplx v = a.at(i, k);
            if (v == 0.0) continue;
            for (int j = 0; j < a.n_; ++j) r.at(i, j) += v * b.at(k, j);
        }
    return r;
}

CMatrix operator+(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.n_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] + b.a_[i];
    return r;
}

CMatrix operator-(const CMatrix& a, const CMatrix& b) {
    CMatrix r(a.n_);
    for (size_t i = 0; i < a.a_.size(); ++i) r.a_[i] = a.a_[i] - b.a_[i];
    return r;
}

CMatrix CMatrix::scaled(cplx s) const {
    CMatrix r(n_);
    for (size_t i = 0; i < a_.size(); ++i) r.a_[i] = a_[i] * s;
    return r;
}

CMatrix CMatrix::adjoint() const {
    CMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r.at(j, i) = std::conj(at(i, j));
    return r;
}

cplx CMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += at(i, i);
    return t;
}

double CMatrix::norm_fro() const {
    double s = 0;
    for (const cplx& v : a_) s += std::norm(v);
    return std::sqrt(s);
}

double CMatrix::max_abs() const {
    double m = 0;
    for (const cplx& v : a_) m = std::max(m, std::abs(v));
    return m;
}

CMatrix CMatrix::inverse() const {
    const int n = n_;
    CMatrix a = *this, inv = identity(n);
    double scale = std::max(1.0, max_abs());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(a.at(r, col)) > std::abs(a.at(piv, col))) piv = r;
        if (std::abs(a.at(piv, col)) < 1e-12 * scale)
            throw NumericalError("matrix numerically singular in inverse()");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a.at(piv, c), a.at(col, c));
                std::swap(inv.at(piv, c), inv.at(col, c));
            }
        cplx d = a.at(col, col);
        for (int c = 0; c < n; ++c) {
            a.at(col, c) /= d;
            inv.at(col, c) /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            cplx f = a.at(r, col);
            if (f == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                a.at(r, c) -= f * a.at(col, c);
                inv.at(r, c) -= f * inv.at(col, c);
            }
        }
    }
    return inv;
}

bool CMatrix::is_scalar(double eps, cplx* value) const {
    cplx v = n_ ? trace() / (double)n_ : cplx(0.0);
    if (value) *value = v;
    double bound = eps * (1.0 + std::abs(v));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
            cplx want = (i == j) ? v : cplx(0.0);
            if (std::abs(at(i, j) - want) > bound) return false;
        }
    return true;
}

bool CMatrix::is_identity(double eps) const {
    return (*this - identity(n_)).max_abs() <= eps;
}

bool CMatrix::is_unitary(double eps) const {
    return (adjoint() * *this - identity(n_)).max_abs() <= eps;
}

void eig_hermitian(const CMatrix& A_in, std::vector<double>& eigenvalues, CMatrix& V) {
    const int n = A_in.size();
    /* Work on the Hermitian average to shed stray asymmetry. */
    CMatrix A = (A_in + A_in.adjoint()).scaled(0.5);
    V = CMatrix::identity(n);
    if (n == 0) {
        eigenvalues.clear();
        return;
    }

    double scale = std::max(1.0, A.max_abs());
    const int max_sweeps = 80;
    for (int sweep = 0; sweep < max_sweeps; ++sweep) {
        double off = 0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(A.at(p, q));
        if (std::sqrt(off) <= 1e-14 * scale * n) break;
        if (sweep == max_sweeps - 1)
            throw NumericalError("Jacobi eigensolver did not converge");

        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                cplx apq = A.at(p, q);
                double mag = std::abs(apq);
                if (mag <= 1e-300) continue;
                cplx phase = apq / mag; // e^{i phi}
                double app = A.at(p, p).real(), aqq = A.at(q, q).real();
                double tau = (aqq - app) / (2.0 * mag);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t), s = t * c;

                /* A <- G* A G with G[p][p]=c, G[p][q]=s*phase,
                 * G[q][p]=-s*conj(phase), G[q][q]=c. */
                for (int k = 0; k < n; ++k) {
                    cplx akp = A.at(k, p), akq = A.at(k, q);
                    A.at(k, p) = c * akp - s * std::conj(phase) * akq;
                    A.at(k, q) = s * phase * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    cplx apk = A.at(p, k), aqk = A.at(q, k);
                    A.at(p, k) = c * apk - s * phase * aqk;
                    A.at(q, k) = s * std::conj(phase) * apk + c * aqk;
                }
                A.at(p, q) = 0.0;
                A.at(q, p) = 0.0;
                A.at(p, p) = cplx(A.at(p, p).real(), 0.0);
                A.at(q, q) = cplx(A.at(q, q).real(), 0.0);
                for (int k = 0; k < n; ++k) {
                    cplx vkp = V.at(k, p), vkq = V.at(k, q);
                    V.at(k, p) = c * vkp - s * std::conj(phase) * vkq;
                    V.at(k, q) = s * phase * vkp + c * vkq;
                }
            }
    }

    eigenvalues.resize(n);
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> diag(n);
    for (int i = 0; i < n; ++i) diag[i] = A.at(i, i).real();
    std::sort(order.begin(), order.end(), [&](int a, int b) { return diag[a] < diag[b]; });
    CMatrix Vs(n);
    for (int c = 0; c < n; ++c) {
        eigenvalues[c] = diag[order[c]];
        for (int r = 0; r < n; ++r) Vs.at(r, c) = V.at(r, order[c]);
    }
    V = Vs;
}

std::vector<RectMatrix> solve_intertwiner_space(const std::vector<CMatrix>& L,
                                                const std::vector<CMatrix>& R) {
    if (L.size() != R.size() || L.empty())
        throw ValidationError("intertwiner solve needs matching nonempty matrix lists");
    const int m = L[0].size(), n = R[0].size();
    const int N = m * n; // vec(M) with M row-major: index r*n + c

    /* Constraint per k: (L_k M - M R_k) = 0.  As a linear operator on vec(M):
     * row (i,j) of L_k M is sum_r L_k[i][r] M[r][j]; of M R_k is
     * sum_c M[i][c] R_k[c][j]. */
    CMatrix Q(N);
    for (size_t k = 0; k < L.size(); ++k) {
        CMatrix Ak(N);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j) {
                int row = i * n + j;
                for (int r = 0; r < m; ++r) Ak.at(row, r * n + j) += L[k].at(i, r);
                for (int c = 0; c < n; ++c) Ak.at(row, i * n + c) -= R[k].at(c, j);
            }
        Q = Q + Ak.adjoint() * Ak;
    }

    std::vector<double> w;
    CMatrix V;
    eig_hermitian(Q, w, V);
    double wmax = w.empty() ? 0.0 : w.back();
    double thresh = 1e-10 * std::max(1.0, wmax);
    std::vector<RectMatrix> basis;
    for (int c = 0; c < N; ++c) {
        if (w[c] > thresh) continue;
        RectMatrix M;
        M.rows = m;
        M.cols = n;
        M.a.resize((size_t)N);
        for (int idx = 0; idx < N; ++idx) M.a[idx] = V.at(idx, c);
        basis.push_back(std::move(M));
    }
    return basis;
}

} // namespace surflift
