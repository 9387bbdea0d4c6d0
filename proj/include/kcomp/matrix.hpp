#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kcomp {

/// Dense real matrix, row-major, 64-bit floats. The universal carrier for
/// everything in this library; indices are 0-based at this level.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols, double fill = 0.0);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int n);
    static Matrix diagonal(const std::vector<double>& d);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }
    std::vector<double>& data() { return data_; }

    Matrix transpose() const;
    double trace() const;

    Matrix& operator+=(const Matrix& rhs);
    Matrix& operator-=(const Matrix& rhs);
    Matrix& operator*=(double s);

    friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
    friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
    friend Matrix operator*(Matrix lhs, double s) { return lhs *= s; }
    friend Matrix operator*(double s, Matrix rhs) { return rhs *= s; }
    friend Matrix operator-(Matrix m) { return m *= -1.0; }
    Matrix operator*(const Matrix& rhs) const;

    std::vector<double> apply(const std::vector<double>& x) const;

    /// Largest absolute entry.
    double max_abs() const;
    /// Induced infinity norm (max absolute row sum).
    double norm_inf() const;
    /// Induced 1-norm (max absolute column sum).
    double norm_one() const;
    double norm_frobenius() const;

    bool all_finite() const;

    std::string to_string(int precision = 6) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Largest absolute entry of the difference; matrices must have equal shape.
double max_abs_diff(const Matrix& a, const Matrix& b);

// small vector helpers shared across modules
double vec_norm_inf(const std::vector<double>& v);
double vec_norm_two(const std::vector<double>& v);
std::vector<double> vec_sub(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace kcomp
