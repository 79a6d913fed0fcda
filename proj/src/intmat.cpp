#include "pgl2hom/intmat.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "pgl2hom/errors.hpp"

namespace pgl2hom {

namespace {
const mpz_class kZero = 0;
}

IntMat IntMat::identity(int n) {
    IntMat m(n, n);
    for (int i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
}

IntMat IntMat::from_rows(std::initializer_list<std::initializer_list<long>> rows) {
    int r = static_cast<int>(rows.size());
    int c = r == 0 ? 0 : static_cast<int>(rows.begin()->size());
    IntMat m(r, c);
    int i = 0;
    for (const auto& row : rows) {
        if (static_cast<int>(row.size()) != c) throw input_error("ragged row list");
        int j = 0;
        for (long v : row) m.set(i, j++, v);
        ++i;
    }
    return m;
}

const mpz_class& IntMat::at(int r, int c) const {
    auto it = entries_.find({r, c});
    return it == entries_.end() ? kZero : it->second;
}

void IntMat::set(int r, int c, mpz_class v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw input_error("matrix index out of range");
    if (v == 0)
        entries_.erase({r, c});
    else
        entries_[{r, c}] = std::move(v);
}

void IntMat::add(int r, int c, const mpz_class& v) {
    if (v == 0) return;
    auto [it, inserted] = entries_.try_emplace({r, c}, v);
    if (!inserted) {
        it->second += v;
        if (it->second == 0) entries_.erase(it);
    }
}

IntMat IntMat::vstack(const IntMat& other) const {
    if (cols_ != other.cols_) throw input_error("vstack: column mismatch");
    IntMat m(rows_ + other.rows_, cols_);
    m.entries_ = entries_;
    for (const auto& [rc, v] : other.entries_) m.entries_[{rc.first + rows_, rc.second}] = v;
    return m;
}

IntMat IntMat::transposed() const {
    IntMat m(cols_, rows_);
    for (const auto& [rc, v] : entries_) m.entries_[{rc.second, rc.first}] = v;
    return m;
}

IntMat IntMat::widened(int extra) const {
    IntMat m(rows_, cols_ + extra);
    m.entries_ = entries_;
    return m;
}

IntMat to_intmat(const SparseBoundary& b) {
    IntMat m(b.nrows, b.ncols);
    for (int c = 0; c < b.ncols; ++c)
        for (long long k = b.colptr[c]; k < b.colptr[c + 1]; ++k)
            m.add(b.rowidx[k], c, b.value[k]);
    return m;
}

void write_matrix_market(std::ostream& os, const IntMat& m) {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << m.rows() << ' ' << m.cols() << ' ' << m.nnz() << '\n';
    for (const auto& [rc, v] : m.entries())
        os << rc.first + 1 << ' ' << rc.second + 1 << ' ' << v << '\n';
}

void write_matrix_market(std::ostream& os, const SparseBoundary& m) {
    os << "%%MatrixMarket matrix coordinate integer general\n";
    os << m.nrows << ' ' << m.ncols << ' ' << m.nnz() << '\n';
    for (int c = 0; c < m.ncols; ++c)
        for (long long k = m.colptr[c]; k < m.colptr[c + 1]; ++k)
            os << m.rowidx[k] + 1 << ' ' << c + 1 << ' ' << static_cast<int>(m.value[k]) << '\n';
}

IntMat read_matrix_market(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("%%MatrixMarket", 0) != 0)
        throw input_error("not a MatrixMarket file");
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '%') break;
    std::istringstream head(line);
    long long r = 0, c = 0, nnz = 0;
    if (!(head >> r >> c >> nnz)) throw input_error("bad MatrixMarket size line");
    IntMat m(static_cast<int>(r), static_cast<int>(c));
    for (long long k = 0; k < nnz; ++k) {
        long long i, j;
        std::string v;
        if (!(is >> i >> j >> v)) throw input_error("truncated MatrixMarket data");
        m.add(static_cast<int>(i - 1), static_cast<int>(j - 1), mpz_class(v));
    }
    return m;
}

void write_matrix_market_file(const std::string& path, const IntMat& m) {
    std::ofstream f(path);
    if (!f) throw input_error("cannot open for writing: " + path);
    write_matrix_market(f, m);
}

void write_matrix_market_file(const std::string& path, const SparseBoundary& m) {
    std::ofstream f(path);
    if (!f) throw input_error("cannot open for writing: " + path);
    write_matrix_market(f, m);
}

IntMat read_matrix_market_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw input_error("cannot open: " + path);
    return read_matrix_market(f);
}

}  // namespace pgl2hom
