#include "dduio/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "dduio/kernels.hpp"

namespace dduio {

namespace {

void check_dims(int rows, int cols)
{
    if (rows < 0 || cols < 0) throw data_error("matrix dimensions must be >= 0");
}

}  // namespace

Mat::Mat(int rows, int cols) : rows_(rows), cols_(cols)
{
    check_dims(rows, cols);
    a_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Mat::Mat(int rows, int cols, std::vector<double> entries)
    : rows_(rows), cols_(cols), a_(std::move(entries))
{
    check_dims(rows, cols);
    if (a_.size() != static_cast<std::size_t>(rows) * cols)
        throw data_error("entry count does not match matrix dimensions");
    if (!all_finite()) throw data_error("matrix entries must be finite");
}

Mat::Mat(std::initializer_list<std::initializer_list<double>> rows)
{
    rows_ = static_cast<int>(rows.size());
    cols_ = rows_ > 0 ? static_cast<int>(rows.begin()->size()) : 0;
    a_.reserve(static_cast<std::size_t>(rows_) * cols_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != cols_)
            throw data_error("ragged initializer list");
        a_.insert(a_.end(), r.begin(), r.end());
    }
    if (!all_finite()) throw data_error("matrix entries must be finite");
}

Mat Mat::identity(int n)
{
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Mat Mat::diag(std::span<const double> d)
{
    Mat m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (int i = 0; i < m.rows_; ++i) m(i, i) = d[i];
    return m;
}

Mat Mat::from_column(std::span<const double> v)
{
    Mat m(static_cast<int>(v.size()), 1);
    std::copy(v.begin(), v.end(), m.a_.begin());
    return m;
}

Vec Mat::col(int j) const
{
    Vec v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Mat::set_col(int j, std::span<const double> v)
{
    if (static_cast<int>(v.size()) != rows_)
        throw data_error("column length mismatch");
    for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transpose() const
{
    Mat t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

Mat Mat::block(int row0, int col0, int nrows, int ncols) const
{
    if (row0 < 0 || col0 < 0 || row0 + nrows > rows_ || col0 + ncols > cols_)
        throw data_error("block out of range");
    Mat b(nrows, ncols);
    for (int i = 0; i < nrows; ++i)
        std::memcpy(b.row(i), row(row0 + i) + col0, sizeof(double) * ncols);
    return b;
}

void Mat::set_block(int row0, int col0, const Mat& m)
{
    if (row0 < 0 || col0 < 0 || row0 + m.rows_ > rows_ || col0 + m.cols_ > cols_)
        throw data_error("block out of range");
    for (int i = 0; i < m.rows_; ++i)
        std::memcpy(row(row0 + i) + col0, m.row(i), sizeof(double) * m.cols_);
}

Mat Mat::operator*(const Mat& rhs) const
{
    if (cols_ != rhs.rows_) throw data_error("matrix product dimension mismatch");
    Mat c(rows_, rhs.cols_);
    if (!c.empty() && cols_ > 0)
        kernels::active().gemm(data(), rhs.data(), c.data(), rows_, cols_,
                               rhs.cols_);
    return c;
}

Vec Mat::operator*(std::span<const double> v) const
{
    if (static_cast<int>(v.size()) != cols_)
        throw data_error("matrix-vector dimension mismatch");
    Vec out(rows_, 0.0);
    const auto& ops = kernels::active();
    for (int i = 0; i < rows_; ++i) out[i] = ops.dot(row(i), v.data(), cols_);
    return out;
}

Mat Mat::operator+(const Mat& rhs) const
{
    Mat c = *this;
    c += rhs;
    return c;
}

Mat Mat::operator-(const Mat& rhs) const
{
    Mat c = *this;
    c -= rhs;
    return c;
}

Mat Mat::operator*(double s) const
{
    Mat c = *this;
    c *= s;
    return c;
}

Mat& Mat::operator+=(const Mat& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw data_error("matrix sum dimension mismatch");
    kernels::active().axpy(1.0, rhs.data(), data(), a_.size());
    return *this;
}

Mat& Mat::operator-=(const Mat& rhs)
{
    if (rows_ != rhs.rows_ || cols_ != rhs.cols_)
        throw data_error("matrix sum dimension mismatch");
    kernels::active().axpy(-1.0, rhs.data(), data(), a_.size());
    return *this;
}

Mat& Mat::operator*=(double s)
{
    kernels::active().scale(s, data(), a_.size());
    return *this;
}

Mat operator*(double s, const Mat& m) { return m * s; }

double Mat::max_abs() const
{
    double v = 0.0;
    for (double e : a_) v = std::max(v, std::abs(e));
    return v;
}

double Mat::norm_inf() const
{
    double v = 0.0;
    for (int i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (int j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
        v = std::max(v, s);
    }
    return v;
}

double Mat::norm_fro() const
{
    if (a_.empty()) return 0.0;
    return std::sqrt(kernels::active().dot(data(), data(), a_.size()));
}

double Mat::trace() const
{
    double t = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
}

bool Mat::all_finite() const
{
    for (double e : a_)
        if (!std::isfinite(e)) return false;
    return true;
}

Mat Mat::vstack(std::span<const Mat> parts)
{
    int rows = 0;
    int cols = parts.empty() ? 0 : parts[0].cols_;
    for (const Mat& p : parts) {
        if (p.cols_ != cols) throw data_error("vstack column mismatch");
        rows += p.rows_;
    }
    Mat out(rows, cols);
    int r = 0;
    for (const Mat& p : parts) {
        out.set_block(r, 0, p);
        r += p.rows_;
    }
    return out;
}

Mat Mat::hstack(std::span<const Mat> parts)
{
    int cols = 0;
    int rows = parts.empty() ? 0 : parts[0].rows_;
    for (const Mat& p : parts) {
        if (p.rows_ != rows) throw data_error("hstack row mismatch");
        cols += p.cols_;
    }
    Mat out(rows, cols);
    int c = 0;
    for (const Mat& p : parts) {
        out.set_block(0, c, p);
        c += p.cols_;
    }
    return out;
}

Mat mat_pow(const Mat& a, int k)
{
    if (a.rows() != a.cols()) throw data_error("mat_pow needs a square matrix");
    if (k < 0) throw data_error("mat_pow needs k >= 0");
    Mat out = Mat::identity(a.rows());
    for (int i = 0; i < k; ++i) out = out * a;
    return out;
}

double norm2(std::span<const double> v)
{
    if (v.empty()) return 0.0;
    return std::sqrt(kernels::active().dot(v.data(), v.data(), v.size()));
}

double norm_inf(std::span<const double> v)
{
    double m = 0.0;
    for (double e : v) m = std::max(m, std::abs(e));
    return m;
}

Vec concat(std::span<const double> a, std::span<const double> b)
{
    Vec out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

Vec concat(std::span<const double> a, std::span<const double> b,
           std::span<const double> c)
{
    Vec out = concat(a, b);
    out.insert(out.end(), c.begin(), c.end());
    return out;
}

std::uint64_t fnv1a_digest(std::span<const Mat> mats)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    auto mix = [&h](const void* p, std::size_t n) {
        const auto* bytes = static_cast<const unsigned char*>(p);
        for (std::size_t i = 0; i < n; ++i) {
            h ^= bytes[i];
            h *= 0x100000001b3ull;
        }
    };
    for (const Mat& m : mats) {
        const std::int64_t dims[2] = {m.rows(), m.cols()};
        mix(dims, sizeof(dims));
        mix(m.data(), sizeof(double) * static_cast<std::size_t>(m.rows()) *
                          static_cast<std::size_t>(m.cols()));
    }
    return h;
}

}  // namespace dduio
