#include "ttground/tt_io.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace ttground {

namespace {

constexpr std::int64_t kMaxDim = std::int64_t(1) << 32;

void put_u64(std::ostream& out, std::uint64_t v) {
    char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xffu);
    out.write(b, 8);
}

void put_i64(std::ostream& out, Index v) {
    put_u64(out, static_cast<std::uint64_t>(static_cast<std::int64_t>(v)));
}

void put_f64(std::ostream& out, double x) {
    std::uint64_t v;
    std::memcpy(&v, &x, 8);
    put_u64(out, v);
}

std::uint64_t get_u64(std::istream& in) {
    unsigned char b[8];
    in.read(reinterpret_cast<char*>(b), 8);
    if (!in) throw std::runtime_error("tt_io: truncated stream");
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    return v;
}

Index get_dim(std::istream& in, const char* what) {
    const auto v = static_cast<std::int64_t>(get_u64(in));
    if (v < 1 || v > kMaxDim)
        throw std::runtime_error(std::string("tt_io: bad ") + what);
    return static_cast<Index>(v);
}

double get_f64(std::istream& in) {
    const std::uint64_t v = get_u64(in);
    double x;
    std::memcpy(&x, &v, 8);
    return x;
}

void expect_magic(std::istream& in, const char* magic) {
    char b[4];
    in.read(b, 4);
    if (!in || std::memcmp(b, magic, 4) != 0)
        throw std::runtime_error(std::string("tt_io: not a ") + magic + " stream");
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("tt_io: cannot open for writing: " + path);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("tt_io: cannot open: " + path);
    return in;
}

}  // namespace

void write_tt(std::ostream& out, const TTVector& x) {
    out.write("TTV1", 4);
    const Index d = x.site_count();
    put_i64(out, d);
    for (Index k = 0; k < d; ++k) put_i64(out, x.core(k).mode());
    for (Index b = 0; b <= d; ++b) put_i64(out, x.rank(b));
    for (Index k = 0; k < d; ++k) {
        const Core3& c = x.core(k);
        for (Index a = 0; a < c.left(); ++a)
            for (Index i = 0; i < c.mode(); ++i)
                for (Index b = 0; b < c.right(); ++b) put_f64(out, c(a, i, b));
    }
    if (!out) throw std::runtime_error("tt_io: write failed");
}

void write_tt(std::ostream& out, const TTMatrix& A) {
    out.write("TTM1", 4);
    const Index d = A.site_count();
    put_i64(out, d);
    for (Index k = 0; k < d; ++k) put_i64(out, A.core(k).rows());
    for (Index k = 0; k < d; ++k) put_i64(out, A.core(k).cols());
    const std::vector<Index> ranks = A.op_ranks();
    for (Index b = 0; b <= d; ++b) put_i64(out, ranks[static_cast<size_t>(b)]);
    for (Index k = 0; k < d; ++k) {
        const Core4& c = A.core(k);
        for (Index g = 0; g < c.left(); ++g)
            for (Index i = 0; i < c.rows(); ++i)
                for (Index j = 0; j < c.cols(); ++j)
                    for (Index h = 0; h < c.right(); ++h) put_f64(out, c(g, i, j, h));
    }
    if (!out) throw std::runtime_error("tt_io: write failed");
}

TTVector read_tt_vector(std::istream& in) {
    expect_magic(in, "TTV1");
    const Index d = get_dim(in, "site count");
    std::vector<Index> modes(static_cast<size_t>(d));
    for (auto& n : modes) n = get_dim(in, "mode size");
    std::vector<Index> ranks(static_cast<size_t>(d) + 1);
    for (auto& r : ranks) r = get_dim(in, "rank");
    if (ranks.front() != 1 || ranks.back() != 1)
        throw std::runtime_error("tt_io: boundary ranks must be 1");

    std::vector<Core3> cores;
    cores.reserve(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        Core3 c(ranks[static_cast<size_t>(k)], modes[static_cast<size_t>(k)],
                ranks[static_cast<size_t>(k) + 1]);
        for (Index a = 0; a < c.left(); ++a)
            for (Index i = 0; i < c.mode(); ++i)
                for (Index b = 0; b < c.right(); ++b) c(a, i, b) = get_f64(in);
        cores.push_back(std::move(c));
    }
    return TTVector(std::move(cores));
}

TTMatrix read_tt_matrix(std::istream& in) {
    expect_magic(in, "TTM1");
    const Index d = get_dim(in, "site count");
    std::vector<Index> rows(static_cast<size_t>(d)), cols(static_cast<size_t>(d));
    for (auto& n : rows) n = get_dim(in, "row mode size");
    for (auto& m : cols) m = get_dim(in, "col mode size");
    std::vector<Index> ranks(static_cast<size_t>(d) + 1);
    for (auto& r : ranks) r = get_dim(in, "operator rank");
    if (ranks.front() != 1 || ranks.back() != 1)
        throw std::runtime_error("tt_io: boundary ranks must be 1");

    std::vector<Core4> cores;
    cores.reserve(static_cast<size_t>(d));
    for (Index k = 0; k < d; ++k) {
        Core4 c(ranks[static_cast<size_t>(k)], rows[static_cast<size_t>(k)],
                cols[static_cast<size_t>(k)], ranks[static_cast<size_t>(k) + 1]);
        for (Index g = 0; g < c.left(); ++g)
            for (Index i = 0; i < c.rows(); ++i)
                for (Index j = 0; j < c.cols(); ++j)
                    for (Index h = 0; h < c.right(); ++h) c(g, i, j, h) = get_f64(in);
        cores.push_back(std::move(c));
    }
    return TTMatrix(std::move(cores));
}

void save_tt(const TTVector& x, const std::string& path) {
    auto out = open_out(path);
    write_tt(out, x);
}

void save_tt(const TTMatrix& A, const std::string& path) {
    auto out = open_out(path);
    write_tt(out, A);
}

TTVector load_tt_vector(const std::string& path) {
    auto in = open_in(path);
    return read_tt_vector(in);
}

TTMatrix load_tt_matrix(const std::string& path) {
    auto in = open_in(path);
    return read_tt_matrix(in);
}

}  // namespace ttground
