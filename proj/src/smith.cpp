#include "concur/smith.hpp"

#include <ostream>
#include <utility>

#include "concur/common.hpp"

namespace concur {

IntegerMatrix IntegerMatrix::from_rows(const std::vector<std::vector<BigInt>>& rows, std::size_t cols)
{
    if (!rows.empty())
        cols = rows.front().size();
    IntegerMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != cols)
            throw InputError("row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                             " entries, expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(r, c) = rows[r][c];
    }
    return m;
}

bool IntegerMatrix::is_zero() const
{
    for (const auto& x : data_)
        if (x != 0)
            return false;
    return true;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& rhs) const
{
    if (cols_ != rhs.rows_)
        throw PreconditionError("matrix product with mismatched dimensions");
    IntegerMatrix out(rows_, rhs.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            const BigInt& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < rhs.cols_; ++j)
                out(i, j) += a * rhs(k, j);
        }
    return out;
}

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m)
{
    os << m.rows() << " " << m.cols() << "\n";
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c)
            os << (c ? " " : "") << m(r, c);
        os << "\n";
    }
    return os;
}

namespace {

void swap_rows(IntegerMatrix& m, std::size_t a, std::size_t b, std::size_t from)
{
    if (a == b)
        return;
    for (std::size_t c = from; c < m.cols(); ++c)
        std::swap(m(a, c), m(b, c));
}

void swap_cols(IntegerMatrix& m, std::size_t a, std::size_t b, std::size_t from)
{
    if (a == b)
        return;
    for (std::size_t r = from; r < m.rows(); ++r)
        std::swap(m(r, a), m(r, b));
}

// row[dst] -= q * row[src], columns >= from
void sub_row(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& q, std::size_t from)
{
    for (std::size_t c = from; c < m.cols(); ++c)
        if (m(src, c) != 0)
            m(dst, c) -= q * m(src, c);
}

void sub_col(IntegerMatrix& m, std::size_t dst, std::size_t src, const BigInt& q, std::size_t from)
{
    for (std::size_t r = from; r < m.rows(); ++r)
        if (m(r, src) != 0)
            m(r, dst) -= q * m(r, src);
}

// Least |entry| in the block [t.., t..]; ties by row then column.
bool find_block_pivot(const IntegerMatrix& m, std::size_t t, std::size_t& pr, std::size_t& pc)
{
    bool found = false;
    BigInt best;
    for (std::size_t r = t; r < m.rows(); ++r)
        for (std::size_t c = t; c < m.cols(); ++c) {
            const BigInt& x = m(r, c);
            if (x == 0)
                continue;
            BigInt ax = abs(x);
            if (!found || ax < best) {
                found = true;
                best = std::move(ax);
                pr = r;
                pc = c;
            }
        }
    return found;
}

}  // namespace

SmithForm smith_normal_form(IntegerMatrix m)
{
    const std::size_t n = std::min(m.rows(), m.cols());
    SmithForm form;
    form.diagonal.assign(n, 0);

    std::size_t t = 0;
    for (; t < n; ++t) {
        std::size_t pr = 0;
        std::size_t pc = 0;
        if (!find_block_pivot(m, t, pr, pc))
            break;
        swap_rows(m, t, pr, t);
        swap_cols(m, t, pc, t);

        for (;;) {
            bool clean = true;
            for (std::size_t r = t + 1; r < m.rows(); ++r) {
                if (m(r, t) == 0)
                    continue;
                BigInt q = m(r, t) / m(t, t);
                if (q != 0)
                    sub_row(m, r, t, q, t);
                if (m(r, t) != 0)
                    clean = false;
            }
            for (std::size_t c = t + 1; c < m.cols(); ++c) {
                if (m(t, c) == 0)
                    continue;
                BigInt q = m(t, c) / m(t, t);
                if (q != 0)
                    sub_col(m, c, t, q, t);
                if (m(t, c) != 0)
                    clean = false;
            }

            if (!clean) {
                // A remainder smaller than the pivot survives in row or column t.
                std::size_t br = t;
                std::size_t bc = t;
                BigInt best = abs(m(t, t));
                for (std::size_t r = t + 1; r < m.rows(); ++r)
                    if (m(r, t) != 0 && abs(m(r, t)) < best) {
                        best = abs(m(r, t));
                        br = r;
                        bc = t;
                    }
                for (std::size_t c = t + 1; c < m.cols(); ++c)
                    if (m(t, c) != 0 && abs(m(t, c)) < best) {
                        best = abs(m(t, c));
                        br = t;
                        bc = c;
                    }
                swap_rows(m, t, br, t);
                swap_cols(m, t, bc, t);
                continue;
            }

            // Row and column t are clear; the pivot must divide the rest.
            bool divides = true;
            for (std::size_t r = t + 1; r < m.rows() && divides; ++r)
                for (std::size_t c = t + 1; c < m.cols(); ++c)
                    if (m(r, c) % m(t, t) != 0) {
                        for (std::size_t k = t; k < m.cols(); ++k)
                            m(t, k) += m(r, k);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        form.diagonal[t] = abs(m(t, t));
    }
    form.rank = t;
    return form;
}

}  // namespace concur
