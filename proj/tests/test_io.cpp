#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "json.hpp"

#include "core/batch_io.hpp"
#include "core/errors.hpp"
#include "core/pipeline.hpp"

using namespace strmat;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& tag) {
        path = fs::temp_directory_path() / ("strmat-test-" + tag + "-" +
                                            std::to_string(::getpid()));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    return std::string(std::istreambuf_iterator<char>(in), {});
}

SpectraBatch small_batch() {
    return generate_batch({EnsembleKind::ToeplitzComplex, 16, 5, 77, 1});
}

}  // namespace

TEST_CASE("hash primitive matches published reference values") {
    CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
    CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
    CHECK(fnv1a64("foobar") == 0x85944171f73967e8ULL);
}

TEST_CASE("batch round trip preserves every field bitwise") {
    TempDir tmp("roundtrip");
    auto b = small_batch();
    save_batch(b, tmp.path, {1.25, 3});

    auto l = load_batch(tmp.path);
    CHECK(l.kind == b.kind);
    CHECK(l.dim == b.dim);
    CHECK(l.count == b.count);
    CHECK(l.seed == b.seed);
    CHECK(l.sigma == b.sigma);
    CHECK(l.rows == b.rows);
    CHECK(batch_manifest_hash(l) == batch_manifest_hash(b));
}

TEST_CASE("deterministic files are byte-identical across saves") {
    TempDir t1("save1"), t2("save2");
    auto b = small_batch();
    save_batch(b, t1.path, {0.5, 1});
    save_batch(b, t2.path, {99.0, 8});  // different volatile run info

    CHECK(slurp(t1.path / "eigenvalues.f64") == slurp(t2.path / "eigenvalues.f64"));
    CHECK(slurp(t1.path / "meta.json") == slurp(t2.path / "meta.json"));
    CHECK(slurp(t1.path / "run.json") != slurp(t2.path / "run.json"));
}

TEST_CASE("worker count does not change the spectra") {
    auto a = generate_batch({EnsembleKind::Hankel, 16, 6, 5, 1});
    auto b = generate_batch({EnsembleKind::Hankel, 16, 6, 5, 4});
    CHECK(a.rows == b.rows);
    CHECK(a.sigma == b.sigma);
}

TEST_CASE("manifest is stable json and embeds its own hash in meta.json") {
    TempDir tmp("manifest");
    auto b = small_batch();
    save_batch(b, tmp.path);

    const std::string manifest = batch_manifest(b);
    CHECK(manifest == batch_manifest(b));

    auto j = nlohmann::json::parse(manifest);
    CHECK(j.at("format") == "strmat-batch");
    CHECK(j.at("version") == 1);
    CHECK(j.at("ensemble") == "toeplitz-complex");
    CHECK(j.at("dim") == 16);
    CHECK(j.at("count") == 5);
    CHECK(j.at("seed") == 77);
    CHECK(j.at("byte_order") == "little");

    char hex[32];
    std::snprintf(hex, sizeof hex, "%016llx",
                  static_cast<unsigned long long>(batch_manifest_hash(b)));
    auto meta = nlohmann::json::parse(slurp(tmp.path / "meta.json"));
    CHECK(meta.at("manifest_hash") == std::string(hex));
    CHECK(meta.at("dim") == 16);
}

TEST_CASE("a held lock blocks a second writer") {
    TempDir tmp("lock");
    auto b = small_batch();
    fs::create_directories(tmp.path);
    {
        DirLock lock(tmp.path);
        CHECK_THROWS_AS(save_batch(b, tmp.path), IoError);
    }
    save_batch(b, tmp.path);  // released: fine now
    CHECK(load_batch(tmp.path).rows == b.rows);
}

TEST_CASE("eigenvector blocks stream out and come back bitwise") {
    TempDir tmp("vectors");
    fs::create_directories(tmp.path);
    const std::size_t n = 4;
    CMatrix m0(n, n), m1(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            m0(i, j) = cplx(static_cast<double>(i) + 0.25, static_cast<double>(j));
            m1(i, j) = cplx(-static_cast<double>(j), 1.0 / (1.0 + static_cast<double>(i)));
        }
    {
        VectorFileWriter w(tmp.path, n);
        w.append(m0);
        w.append(m1);
        CHECK(w.count() == 2);
        CMatrix bad(3, 3);
        CHECK_THROWS_AS(w.append(bad), std::invalid_argument);
    }
    for (std::size_t idx = 0; idx < 2; ++idx) {
        CMatrix r = load_vectors(tmp.path, n, idx);
        const CMatrix& want = idx == 0 ? m0 : m1;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) CHECK(r(i, j) == want(i, j));
    }
    CHECK_THROWS_AS(load_vectors(tmp.path, n, 2), IoError);
}

TEST_CASE("malformed inputs are reported as io errors") {
    TempDir tmp("bad");
    CHECK_THROWS_AS(load_batch(tmp.path / "missing"), IoError);

    auto b = small_batch();
    save_batch(b, tmp.path);

    // corrupt the metadata
    {
        std::ofstream out(tmp.path / "meta.json", std::ios::trunc);
        out << "not json at all";
    }
    CHECK_THROWS_AS(load_batch(tmp.path), IoError);

    // restore, then truncate the data file
    save_batch(b, tmp.path);
    fs::resize_file(tmp.path / "eigenvalues.f64", 8);
    CHECK_THROWS_AS(load_batch(tmp.path), IoError);
}
