#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "core/spectral.hpp"
#include "core/types.hpp"

namespace strmat {

std::uint64_t fnv1a64(const void* data, std::size_t len);
std::uint64_t fnv1a64(const std::string& s);

// Canonical manifest of the deterministic batch fields (nlohmann keeps keys
// sorted, so the serialization is stable). Its hash keys every derived CSV.
std::string batch_manifest(const SpectraBatch& batch);
std::uint64_t batch_manifest_hash(const SpectraBatch& batch);

struct RunInfo {
    double wall_seconds = 0.0;
    std::size_t workers = 1;
};

// Directory layout:
//   meta.json        manifest + manifest_hash; byte-identical across re-runs
//   eigenvalues.f64  count x dim doubles, little endian, row major
//   run.json         wall clock and worker count; excluded from the hash
//   vectors.c128     optional, count x dim x dim interleaved re/im doubles
void save_batch(const SpectraBatch& batch, const std::filesystem::path& dir,
                const RunInfo& run = {});
SpectraBatch load_batch(const std::filesystem::path& dir);

// Streams eigenvector matrices (one dim x dim row-major block per
// realization) next to an existing or future meta.json.
class VectorFileWriter {
public:
    VectorFileWriter(const std::filesystem::path& dir, std::size_t dim);
    ~VectorFileWriter();
    void append(const CMatrix& vectors);
    std::size_t count() const { return count_; }
    void close();

private:
    std::filesystem::path path_;
    std::size_t dim_ = 0;
    std::size_t count_ = 0;
    void* file_ = nullptr;  // FILE*
};

CMatrix load_vectors(const std::filesystem::path& dir, std::size_t dim, std::size_t index);

// Holds dir/.lock for the lifetime of the object; a second writer on the
// same directory fails with std::runtime_error.
class DirLock {
public:
    explicit DirLock(const std::filesystem::path& dir);
    ~DirLock();
    DirLock(const DirLock&) = delete;
    DirLock& operator=(const DirLock&) = delete;

private:
    std::filesystem::path path_;
    bool held_ = false;
};

}  // namespace strmat
