#pragma once

#include <gmpxx.h>

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace pgl2hom {

/// Sparse matrix over Z with arbitrary-precision entries.
/// Zero entries are never stored. Row/column indices are 0-based.
///
/// This is the working type for presentations, homomorphisms and
/// anything that fits comfortably in a map. Large boundary matrices
/// use the compact SparseBoundary below instead.
class IntMat {
public:
    IntMat() = default;
    IntMat(int rows, int cols) : rows_(rows), cols_(cols) {}

    static IntMat identity(int n);
    /// Build from dense rows, e.g. IntMat::from_rows({{2,4},{6,8}}).
    static IntMat from_rows(std::initializer_list<std::initializer_list<long>> rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    long long nnz() const { return static_cast<long long>(entries_.size()); }

    const mpz_class& at(int r, int c) const;
    void set(int r, int c, mpz_class v);
    void add(int r, int c, const mpz_class& v);

    /// Entries in (row, col) lexicographic order.
    const std::map<std::pair<int, int>, mpz_class>& entries() const { return entries_; }

    /// Stack rows of `other` below this matrix (column counts must agree).
    IntMat vstack(const IntMat& other) const;
    IntMat transposed() const;
    /// Append `extra` empty columns.
    IntMat widened(int extra) const;

    bool operator==(const IntMat& other) const = default;

private:
    int rows_ = 0, cols_ = 0;
    std::map<std::pair<int, int>, mpz_class> entries_;
};

/// Compact CSC matrix with tiny entries, for simplicial and bar
/// boundary maps (millions of columns, a handful of +-1 per column).
struct SparseBoundary {
    int nrows = 0;
    int ncols = 0;
    std::vector<long long> colptr;  // size ncols+1
    std::vector<int> rowidx;
    std::vector<signed char> value;

    long long nnz() const { return static_cast<long long>(rowidx.size()); }
};

IntMat to_intmat(const SparseBoundary& b);

/// MatrixMarket "coordinate integer general" I/O.
void write_matrix_market(std::ostream& os, const IntMat& m);
void write_matrix_market(std::ostream& os, const SparseBoundary& m);
IntMat read_matrix_market(std::istream& is);
void write_matrix_market_file(const std::string& path, const IntMat& m);
void write_matrix_market_file(const std::string& path, const SparseBoundary& m);
IntMat read_matrix_market_file(const std::string& path);

}  // namespace pgl2hom
