#pragma once

#include <complex>
#include <vector>

namespace surflift {

using cplx = std::complex<double>;

/* Numerical tolerances used across the library.  count_eps guards the final
 * integrality check of counts; exceeding it is a hard error, not a rounding. */
struct TolerancePolicy {
    double mat_eps = 1e-9;    // matrix residuals
    double scalar_eps = 1e-9; // scalar comparisons
    double count_eps = 1e-6;  // |count - round(count)| bound
};

/* Dense square complex matrix, row-major. */
class CMatrix {
public:
    CMatrix() = default;
    explicit CMatrix(int n) : n_(n), a_((size_t)n * n) {}
    static CMatrix identity(int n);
    static CMatrix from(const std::vector<std::vector<cplx>>& rows);

    int size() const { return n_; }
    cplx& at(int r, int c) { return a_[(size_t)r * n_ + c]; }
    const cplx& at(int r, int c) const { return a_[(size_t)r * n_ + c]; }

    friend CMatrix operator*(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator+(const CMatrix& a, const CMatrix& b);
    friend CMatrix operator-(const CMatrix& a, const CMatrix& b);
    CMatrix scaled(cplx s) const;
    CMatrix adjoint() const;
    cplx trace() const;
    double norm_fro() const;
    double max_abs() const;
    CMatrix inverse() const; // Gauss-Jordan; throws NumericalError when singular

    bool is_scalar(double eps, cplx* value = nullptr) const;
    bool is_identity(double eps) const;
    bool is_unitary(double eps) const;

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

/* Hermitian eigendecomposition by cyclic complex Jacobi rotations:
 * A = V diag(w) V^*, eigenvalues ascending, V unitary. */
void eig_hermitian(const CMatrix& A, std::vector<double>& eigenvalues, CMatrix& V);

/* Rectangular complex matrix, row-major; just storage plus indexed access. */
struct RectMatrix {
    int rows = 0, cols = 0;
    std::vector<cplx> a;
    cplx& at(int r, int c) { return a[(size_t)r * cols + c]; }
    const cplx& at(int r, int c) const { return a[(size_t)r * cols + c]; }
};

/* Orthonormal basis of { M : L_k M = M R_k for all k }, M of shape m x n when
 * the L_k are m x m and the R_k are n x n.  Solved as the null space of the
 * Gram matrix of the stacked constraints (relative threshold 1e-10). */
std::vector<RectMatrix> solve_intertwiner_space(const std::vector<CMatrix>& L,
                                                const std::vector<CMatrix>& R);

} // namespace surflift
