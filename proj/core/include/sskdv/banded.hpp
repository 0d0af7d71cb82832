#pragma once

#include <vector>

namespace sskdv {

/// Banded matrix in LAPACK general-band storage with an LU solve (dgbtrf /
/// dgbtrs). One factorization, any number of right-hand sides.
class BandedMatrix {
  public:
    BandedMatrix(int n, int kl, int ku);

    void clear();
    void add(int i, int j, double v);
    double get(int i, int j) const;

    void factor();
    void solve(std::vector<double>& rhs) const; // in place

    /// y += A x using the unfactored coefficients (kept across factor()).
    void apply(const std::vector<double>& x, std::vector<double>& y) const;

    int size() const { return n_; }

  private:
    int n_, kl_, ku_, ldab_;
    bool factored_ = false;
    std::vector<double> ab_;
    std::vector<double> ab_orig_;
    std::vector<int> ipiv_;
};

} // namespace sskdv
