#ifndef CONCUR_SMITH_HPP
#define CONCUR_SMITH_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <cstddef>
#include <iosfwd>
#include <vector>

namespace concur {

using BigInt = boost::multiprecision::cpp_int;

/// Dense matrix of exact integers, row-major.
class IntegerMatrix {
  public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    /// Throws InputError on ragged rows.
    static IntegerMatrix from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols = 0);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    BigInt& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const BigInt& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    bool is_zero() const;
    IntegerMatrix operator*(const IntegerMatrix& rhs) const;
    friend bool operator==(const IntegerMatrix&, const IntegerMatrix&) = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<BigInt> data_;
};

/// Writes `<rows> <cols>` followed by one line of space-separated entries per row.
std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

struct SmithForm {
    /// min(rows, cols) diagonal entries, non-negative, non-zero ones first.
    std::vector<BigInt> diagonal;
    std::size_t rank = 0;
};

/**
 * Smith normal form by unimodular row and column operations.
 *
 * The pivot at each step is the non-zero entry of least absolute value in
 * the remaining block (ties: lowest row, then lowest column). Entries are
 * arbitrary precision, so no overflow is possible.
 */
SmithForm smith_normal_form(IntegerMatrix m);

}  // namespace concur

#endif  // CONCUR_SMITH_HPP
