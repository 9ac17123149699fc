#pragma once

#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include "dduio/common.hpp"

namespace dduio {

using Vec = std::vector<double>;

// Dense row-major double matrix. Value semantics throughout; zero rows or
// columns are legal and show up routinely (systems with no known inputs have
// 0-row input blocks).
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols);  // zero-filled
    Mat(int rows, int cols, std::vector<double> entries);
    Mat(std::initializer_list<std::initializer_list<double>> rows);

    static Mat identity(int n);
    static Mat zero(int rows, int cols) { return Mat(rows, cols); }
    static Mat diag(std::span<const double> d);
    static Mat from_column(std::span<const double> v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    double& operator()(int i, int j) { return a_[idx(i, j)]; }
    double operator()(int i, int j) const { return a_[idx(i, j)]; }

    double* row(int i) { return a_.data() + static_cast<std::size_t>(i) * cols_; }
    const double* row(int i) const
    {
        return a_.data() + static_cast<std::size_t>(i) * cols_;
    }
    double* data() { return a_.data(); }
    const double* data() const { return a_.data(); }

    Vec col(int j) const;
    void set_col(int j, std::span<const double> v);

    Mat transpose() const;
    Mat block(int row0, int col0, int nrows, int ncols) const;
    void set_block(int row0, int col0, const Mat& m);

    Mat operator*(const Mat& rhs) const;
    Vec operator*(std::span<const double> v) const;
    Mat operator+(const Mat& rhs) const;
    Mat operator-(const Mat& rhs) const;
    Mat operator*(double s) const;
    Mat& operator+=(const Mat& rhs);
    Mat& operator-=(const Mat& rhs);
    Mat& operator*=(double s);

    bool operator==(const Mat& rhs) const = default;

    double max_abs() const;        // entrywise infinity norm
    double norm_inf() const;       // max row sum
    double norm_fro() const;
    double trace() const;
    bool all_finite() const;

    static Mat vstack(std::span<const Mat> parts);
    static Mat hstack(std::span<const Mat> parts);

private:
    std::size_t idx(int i, int j) const
    {
        return static_cast<std::size_t>(i) * cols_ + j;
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> a_;
};

Mat operator*(double s, const Mat& m);

// A^k by repeated multiplication, k >= 0.
Mat mat_pow(const Mat& a, int k);

// Euclidean helpers on plain vectors.
double norm2(std::span<const double> v);
double norm_inf(std::span<const double> v);
Vec concat(std::span<const double> a, std::span<const double> b);
Vec concat(std::span<const double> a, std::span<const double> b,
           std::span<const double> c);

// FNV-1a over dimensions and raw entry bytes; used to fingerprint the data a
// realization was synthesized from.
std::uint64_t fnv1a_digest(std::span<const Mat> mats);

}  // namespace dduio
