#include "nsgls/snapshot.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <memory>
#include <stdexcept>

namespace nsgls {

namespace {

// Samples are written as raw doubles; this code targets little-endian hosts.
static_assert(sizeof(double) == 8, "NSGLS1 requires 64-bit doubles");

struct FileCloser {
    void operator()(std::FILE* f) const {
        if (f)
            std::fclose(f);
    }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

[[noreturn]] void parse_error(const std::string& path, long offset, const std::string& what) {
    throw std::runtime_error("snapshot parse error in '" + path + "' at byte offset " +
                             std::to_string(offset) + ": " + what);
}

} // namespace

void write_snapshot(const std::string& path, const VectorField& u) {
    FilePtr f(std::fopen(path.c_str(), "wb"));
    if (!f)
        throw std::runtime_error("write_snapshot: cannot open '" + path + "'");
    const double t = u.time_tag.value_or(0.0);
    std::fprintf(f.get(), "NSGLS1 d=%d n=%d L=%.17g t=%.17g comps=%d\n", u.grid.d, u.grid.n,
                 u.grid.L, t, u.grid.d);
    const std::size_t np = u.grid.npoints();
    for (const auto& c : u.comp)
        if (std::fwrite(c.data(), sizeof(double), np, f.get()) != np)
            throw std::runtime_error("write_snapshot: short write to '" + path + "'");
}

VectorField read_snapshot(const std::string& path) {
    FilePtr f(std::fopen(path.c_str(), "rb"));
    if (!f)
        throw std::runtime_error("read_snapshot: cannot open '" + path + "'");
    char header[256];
    if (!std::fgets(header, sizeof(header), f.get()))
        parse_error(path, 0, "missing header line");
    int d = 0, n = 0, comps = 0;
    double L = 0.0, t = 0.0;
    if (std::sscanf(header, "NSGLS1 d=%d n=%d L=%lg t=%lg comps=%d", &d, &n, &L, &t, &comps) != 5)
        parse_error(path, 0, "malformed header '" + std::string(header) + "'");
    if (comps != d)
        parse_error(path, 0, "comps does not match d");
    Grid grid(d, n, L); // validates d, n, L
    VectorField u(grid);
    u.time_tag = t;
    const std::size_t np = grid.npoints();
    for (int c = 0; c < d; ++c) {
        const std::size_t got = std::fread(u.comp[c].data(), sizeof(double), np, f.get());
        if (got != np)
            parse_error(path, std::ftell(f.get()),
                        "truncated payload (component " + std::to_string(c) + ")");
    }
    char extra;
    if (std::fread(&extra, 1, 1, f.get()) == 1)
        parse_error(path, std::ftell(f.get()) - 1, "trailing bytes after payload");
    if (!u.all_finite())
        parse_error(path, 0, "non-finite samples in payload");
    return u;
}

} // namespace nsgls
