#include "sskdv/banded.hpp"

#include "sskdv/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

extern "C" {
void dgbtrf_(const int* m, const int* n, const int* kl, const int* ku, double* ab,
             const int* ldab, int* ipiv, int* info);
void dgbtrs_(const char* trans, const int* n, const int* kl, const int* ku, const int* nrhs,
             const double* ab, const int* ldab, const int* ipiv, double* b, const int* ldb,
             int* info);
}

namespace sskdv {

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
    ab_.assign(static_cast<std::size_t>(ldab_) * n_, 0.0);
    ipiv_.resize(n_);
}

void BandedMatrix::clear() {
    std::fill(ab_.begin(), ab_.end(), 0.0);
    factored_ = false;
}

void BandedMatrix::add(int i, int j, double v) {
    // dgbtrf expects A(i,j) at ab[kl+ku+i-j, j] (0-based), |i-j| <= band.
    if (std::abs(i - j) > std::max(kl_, ku_) || (j > i && j - i > ku_) || (i > j && i - j > kl_))
        throw GridError("banded: entry (" + std::to_string(i) + "," + std::to_string(j) +
                        ") outside band");
    ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v;
}

double BandedMatrix::get(int i, int j) const {
    if ((j > i && j - i > ku_) || (i > j && i - j > kl_)) return 0.0;
    return ab_[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)];
}

void BandedMatrix::factor() {
    ab_orig_ = ab_;
    int info = 0;
    dgbtrf_(&n_, &n_, &kl_, &ku_, ab_.data(), &ldab_, ipiv_.data(), &info);
    if (info != 0)
        throw ConvergenceError("banded: dgbtrf failed with info = " + std::to_string(info));
    factored_ = true;
}

void BandedMatrix::apply(const std::vector<double>& x, std::vector<double>& y) const {
    const std::vector<double>& ab = factored_ ? ab_orig_ : ab_;
    for (int j = 0; j < n_; ++j) {
        const double xj = x[j];
        if (xj == 0.0) continue;
        const int ilo = std::max(0, j - ku_);
        const int ihi = std::min(n_ - 1, j + kl_);
        for (int i = ilo; i <= ihi; ++i)
            y[i] += ab[static_cast<std::size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] * xj;
    }
}

void BandedMatrix::solve(std::vector<double>& rhs) const {
    if (!factored_) throw ConvergenceError("banded: solve before factor");
    const char trans = 'N';
    const int nrhs = 1;
    int info = 0;
    dgbtrs_(&trans, &n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv_.data(), rhs.data(), &n_,
            &info);
    if (info != 0)
        throw ConvergenceError("banded: dgbtrs failed with info = " + std::to_string(info));
}

} // namespace sskdv
