#include "core/batch_io.hpp"

#include "core/errors.hpp"

#include <bit>
#include <cerrno>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <stdexcept>

#include <fcntl.h>
#include <unistd.h>

#include "json.hpp"

#include "core/ensembles.hpp"
#include "core/rng.hpp"

namespace strmat {

namespace fs = std::filesystem;
using nlohmann::json;

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    std::uint64_t h = 0xCBF29CE484222325ull;
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001B3ull;
    }
    return h;
}

std::uint64_t fnv1a64(const std::string& s) { return fnv1a64(s.data(), s.size()); }

namespace {

constexpr int kFormatVersion = 1;

std::uint64_t bswap64(std::uint64_t v) {
    std::uint64_t r = 0;
    for (int i = 0; i < 8; ++i) r = (r << 8) | ((v >> (8 * i)) & 0xFF);
    return r;
}

// in-place conversion between host and little-endian doubles
void to_little_endian(double* vals, std::size_t n) {
    if constexpr (std::endian::native == std::endian::little) {
        (void)vals;
        (void)n;
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint64_t u;
            std::memcpy(&u, vals + i, 8);
            u = bswap64(u);
            std::memcpy(vals + i, &u, 8);
        }
    }
}

json manifest_json(const SpectraBatch& batch) {
    json m;
    m["format"] = "strmat-batch";
    m["version"] = kFormatVersion;
    m["ensemble"] = ensemble_name(batch.kind);
    m["dim"] = batch.dim;
    m["count"] = batch.count;
    m["seed"] = batch.seed;
    m["sigma"] = batch.sigma;
    m["rng"] = rng_name();
    m["data_file"] = "eigenvalues.f64";
    m["byte_order"] = "little";
    return m;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + p.string());
    out << text;
    if (!out) throw IoError("write failed: " + p.string());
}

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot open: " + p.string());
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return s;
}

}  // namespace

std::string batch_manifest(const SpectraBatch& batch) {
    return manifest_json(batch).dump();
}

std::uint64_t batch_manifest_hash(const SpectraBatch& batch) {
    return fnv1a64(batch_manifest(batch));
}

void save_batch(const SpectraBatch& batch, const fs::path& dir, const RunInfo& run) {
    if (batch.rows.size() != batch.count)
        throw std::invalid_argument("save_batch: row count mismatch");
    fs::create_directories(dir);
    DirLock lock(dir);

    {
        std::ofstream out(dir / "eigenvalues.f64", std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open for writing: " + (dir / "eigenvalues.f64").string());
        std::vector<double> buf;
        for (const auto& row : batch.rows) {
            if (row.size() != batch.dim)
                throw std::invalid_argument("save_batch: row length mismatch");
            buf = row;
            to_little_endian(buf.data(), buf.size());
            out.write(reinterpret_cast<const char*>(buf.data()),
                      static_cast<std::streamsize>(buf.size() * sizeof(double)));
        }
        if (!out) throw IoError("write failed: eigenvalues.f64");
    }

    json meta = manifest_json(batch);
    char hash[32];
    std::snprintf(hash, sizeof hash, "%016llx",
                  static_cast<unsigned long long>(batch_manifest_hash(batch)));
    meta["manifest_hash"] = hash;
    write_file(dir / "meta.json", meta.dump(2) + "\n");

    json rj;
    rj["wall_seconds"] = run.wall_seconds;
    rj["workers"] = run.workers;
    write_file(dir / "run.json", rj.dump(2) + "\n");
}

SpectraBatch load_batch(const fs::path& dir) {
    json meta;
    try {
        meta = json::parse(read_file(dir / "meta.json"));
    } catch (const json::exception& e) {
        throw IoError("bad meta.json in " + dir.string() + ": " + e.what());
    }
    if (meta.value("format", "") != "strmat-batch")
        throw IoError("not a batch directory: " + dir.string());
    if (meta.value("version", 0) != kFormatVersion)
        throw IoError("unsupported batch version in " + dir.string());

    SpectraBatch b;
    b.kind = ensemble_from_name(meta.at("ensemble").get<std::string>());
    b.dim = meta.at("dim").get<std::size_t>();
    b.count = meta.at("count").get<std::size_t>();
    b.seed = meta.at("seed").get<std::uint64_t>();
    b.sigma = meta.at("sigma").get<double>();

    const fs::path data = dir / meta.value("data_file", "eigenvalues.f64");
    std::ifstream in(data, std::ios::binary);
    if (!in) throw IoError("cannot open: " + data.string());
    in.seekg(0, std::ios::end);
    const auto bytes = static_cast<std::size_t>(in.tellg());
    in.seekg(0);
    if (bytes != b.count * b.dim * sizeof(double))
        throw IoError("eigenvalue file size mismatch in " + dir.string());

    b.rows.assign(b.count, std::vector<double>(b.dim));
    for (auto& row : b.rows) {
        in.read(reinterpret_cast<char*>(row.data()),
                static_cast<std::streamsize>(b.dim * sizeof(double)));
        to_little_endian(row.data(), row.size());  // little <-> host is an involution
    }
    if (!in) throw IoError("read failed: " + data.string());
    return b;
}

VectorFileWriter::VectorFileWriter(const fs::path& dir, std::size_t dim)
    : path_(dir / "vectors.c128"), dim_(dim) {
    fs::create_directories(dir);
    FILE* f = std::fopen(path_.c_str(), "wb");
    if (!f) throw IoError("cannot open for writing: " + path_.string());
    file_ = f;
}

VectorFileWriter::~VectorFileWriter() { close(); }

void VectorFileWriter::append(const CMatrix& vectors) {
    if (!file_) throw IoError("vector file already closed");
    if (vectors.rows() != dim_ || vectors.cols() != dim_)
        throw std::invalid_argument("vector block has wrong shape");
    std::vector<double> buf(2 * dim_ * dim_);
    std::memcpy(buf.data(), vectors.data(), buf.size() * sizeof(double));
    to_little_endian(buf.data(), buf.size());
    if (std::fwrite(buf.data(), sizeof(double), buf.size(), static_cast<FILE*>(file_)) != buf.size())
        throw IoError("write failed: " + path_.string());
    ++count_;
}

void VectorFileWriter::close() {
    if (file_) {
        std::fclose(static_cast<FILE*>(file_));
        file_ = nullptr;
    }
}

CMatrix load_vectors(const fs::path& dir, std::size_t dim, std::size_t index) {
    std::ifstream in(dir / "vectors.c128", std::ios::binary);
    if (!in) throw IoError("cannot open: " + (dir / "vectors.c128").string());
    const std::size_t block = 2 * dim * dim * sizeof(double);
    in.seekg(static_cast<std::streamoff>(index * block));
    CMatrix m(dim, dim);
    std::vector<double> buf(2 * dim * dim);
    in.read(reinterpret_cast<char*>(buf.data()), static_cast<std::streamsize>(block));
    if (!in) throw IoError("vector block read failed (index out of range?)");
    to_little_endian(buf.data(), buf.size());
    for (std::size_t i = 0; i < dim * dim; ++i)
        m.data()[i] = cplx(buf[2 * i], buf[2 * i + 1]);
    return m;
}

DirLock::DirLock(const fs::path& dir) : path_(dir / ".lock") {
    fs::create_directories(dir);
    int fd = ::open(path_.c_str(), O_CREAT | O_EXCL | O_WRONLY, 0644);
    if (fd < 0) {
        if (errno == EEXIST)
            throw IoError("output directory is locked by another writer: " + dir.string());
        throw IoError("cannot create lock file: " + path_.string());
    }
    char pid[32];
    int len = std::snprintf(pid, sizeof pid, "%ld\n", static_cast<long>(::getpid()));
    if (::write(fd, pid, static_cast<std::size_t>(len)) != len) { /* best effort */ }
    ::close(fd);
    held_ = true;
}

DirLock::~DirLock() {
    if (held_) {
        std::error_code ec;
        fs::remove(path_, ec);
    }
}

}  // namespace strmat
