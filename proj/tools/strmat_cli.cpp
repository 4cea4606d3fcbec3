// Command-line front end; talks to the library through the C API only.
#include <chrono>
#include <cstdio>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "strmat.h"

namespace {

using nlohmann::json;

constexpr size_t kPresetDim = 512;    // paper-small scale
constexpr size_t kPresetCount = 2000;

int fail(int code) {
    std::fprintf(stderr, "error: %s\n", strmat_last_error());
    return code;
}

std::string hash_hex(uint64_t h) {
    char buf[24];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// Manifest = resolved command + parameters (+ upstream batch hash); its hash
// heads the CSV, the full JSON plus volatile run info lands in a sidecar.
struct Manifest {
    json body;
    double wall_seconds = 0.0;

    Manifest(const std::string& command, const json& params) {
        body["tool"] = "strmat";
        body["version"] = strmat_version();
        body["rng"] = strmat_rng_name();
        body["command"] = command;
        body["params"] = params;
    }

    void bind_input(const strmat_batch* b) {
        body["input_manifest_hash"] = hash_hex(strmat_batch_manifest_hash(b));
    }

    uint64_t hash() const {
        const std::string s = body.dump();
        return strmat_fnv1a64(s.data(), s.size());
    }
};

int write_table_csv(const std::string& path, const strmat_table* t, const Manifest& m) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        std::fprintf(stderr, "error: cannot open %s for writing\n", path.c_str());
        return STRMAT_EIO;
    }
    out << "# manifest_hash=" << hash_hex(m.hash()) << "\n";
    const size_t cols = strmat_table_cols(t);
    for (size_t c = 0; c < cols; ++c) out << (c ? "," : "") << strmat_table_column(t, c);
    out << "\n";
    char buf[32];
    for (size_t r = 0; r < strmat_table_rows(t); ++r) {
        for (size_t c = 0; c < cols; ++c) {
            std::snprintf(buf, sizeof buf, "%.17g", strmat_table_get(t, r, c));
            out << (c ? "," : "") << buf;
        }
        out << "\n";
    }
    if (!out) {
        std::fprintf(stderr, "error: write failed: %s\n", path.c_str());
        return STRMAT_EIO;
    }

    json side;
    side["manifest"] = m.body;
    side["manifest_hash"] = hash_hex(m.hash());
    side["run"]["wall_seconds"] = m.wall_seconds;
    std::ofstream sj(path + ".manifest.json", std::ios::binary | std::ios::trunc);
    sj << side.dump(2) << "\n";
    return sj ? STRMAT_OK : STRMAT_EIO;
}

struct BatchGuard {
    strmat_batch* b = nullptr;
    ~BatchGuard() { strmat_batch_free(b); }
};

struct TableGuard {
    strmat_table* t = nullptr;
    ~TableGuard() { strmat_table_free(t); }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spectral statistics of random Toeplitz/Hankel matrix ensembles"};
    app.require_subcommand(1);

    std::string ensemble, in_dir, out_path, preset, law;
    size_t dim = kPresetDim, count = kPresetCount, workers = 0;
    size_t disp_dim = 16;
    size_t nmax = 5, bins = 200, trials = 1000;
    uint64_t seed = 1;
    double bin_width = 0.05, tau_min = 0.01, tau_max = 3.0, tau_step = 0.005, lmax = 10.0;
    double smax = 5.0, step = 0.01;
    int plasma = 0;
    bool with_vectors = false, window_only = false;
    std::vector<size_t> dims, counts;

    auto* gen = app.add_subcommand("gen", "diagonalize seeded realizations into a batch directory");
    gen->add_option("--ensemble", ensemble)->required();
    auto* gen_dim = gen->add_option("--dim", dim, "matrix dimension");
    auto* gen_count = gen->add_option("--count", count, "number of realizations");
    gen->add_option("--seed", seed);
    gen->add_option("--workers", workers);
    gen->add_option("--preset", preset)->check(CLI::IsMember({"paper-small"}));
    gen->add_flag("--vectors", with_vectors, "also store eigenvector matrices");
    gen->add_option("--out", out_path)->required();

    auto* density = app.add_subcommand("density", "mean spectral density in eps = E/sigma units");
    density->add_option("--in", in_dir)->required();
    density->add_option("--bins", bins);
    density->add_option("--out", out_path)->required();

    auto* nn = app.add_subcommand("nn-dist", "n-th nearest-neighbor spacing histograms");
    nn->add_option("--in", in_dir)->required();
    nn->add_option("--nmax", nmax);
    nn->add_option("--bin-width", bin_width);
    nn->add_option("--out", out_path)->required();

    auto* fitg = app.add_subcommand("fit-gamma", "repulsion exponent fits per spacing order");
    fitg->add_option("--in", in_dir)->required();
    fitg->add_option("--nmax", nmax);
    fitg->add_option("--out", out_path)->required();

    auto* ff = app.add_subcommand("form-factor", "empirical and theoretical form factor");
    ff->add_option("--in", in_dir)->required();
    ff->add_option("--tau-min", tau_min);
    ff->add_option("--tau-max", tau_max);
    ff->add_option("--tau-step", tau_step);
    ff->add_flag("--window", window_only, "restrict to the analysis window");
    ff->add_option("--out", out_path)->required();

    auto* nv = app.add_subcommand("number-variance", "level count variance vs interval length");
    nv->add_option("--in", in_dir)->required();
    nv->add_option("--lmax", lmax);
    nv->add_option("--out", out_path)->required();

    auto* fractal = app.add_subcommand("fractal", "multifractal dimensions over the N ladder");
    fractal->add_option("--ensemble", ensemble)->required();
    fractal->add_option("--seed", seed);
    fractal->add_option("--dims", dims, "ladder dimensions")->delimiter(',');
    fractal->add_option("--counts", counts, "realizations per rung")->delimiter(',');
    fractal->add_option("--workers", workers);
    fractal->add_option("--out", out_path)->required();

    auto* theory = app.add_subcommand("theory", "tabulate the analytic spacing laws and form factor");
    auto* law_opt = theory->add_option("--law", law, "exponent law p,k");
    auto* plasma_opt = theory->add_option("--plasma", plasma, "plasma model 1 or 2");
    law_opt->excludes(plasma_opt);
    theory->add_option("--smax", smax);
    theory->add_option("--step", step);
    theory->add_option("--out", out_path)->required();

    auto* zm = app.add_subcommand("zero-modes", "parameter counting vs closed-form exponents");
    zm->add_option("--ensemble", ensemble)->required();
    zm->add_option("--nmax", nmax);

    auto* disp = app.add_subcommand("displacement-check", "max displacement rank over random draws");
    disp->add_option("--ensemble", ensemble)->required();
    disp->add_option("--dim", disp_dim);
    disp->add_option("--trials", trials);
    disp->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : STRMAT_EINVAL;
    }

    const auto t0 = std::chrono::steady_clock::now();

    if (gen->parsed()) {
        if (!preset.empty()) {  // explicit flags win over the preset
            if (gen_dim->count() == 0) dim = kPresetDim;
            if (gen_count->count() == 0) count = kPresetCount;
        }
        BatchGuard b;
        if (int rc = strmat_generate_to_dir(ensemble.c_str(), dim, count, seed, workers,
                                            out_path.c_str(), with_vectors, &b.b))
            return fail(rc);
        std::printf("wrote %zu x %zu spectra to %s (sigma = %.6f, manifest %s)\n",
                    strmat_batch_count(b.b), strmat_batch_dim(b.b), out_path.c_str(),
                    strmat_batch_sigma(b.b), hash_hex(strmat_batch_manifest_hash(b.b)).c_str());
        return 0;
    }

    if (density->parsed() || nn->parsed() || fitg->parsed() || ff->parsed() || nv->parsed()) {
        BatchGuard b;
        if (int rc = strmat_batch_load(in_dir.c_str(), &b.b)) return fail(rc);
        TableGuard t;
        json params;
        std::string cmd;
        int rc = STRMAT_OK;
        if (density->parsed()) {
            cmd = "density";
            params["bins"] = bins;
            rc = strmat_density(b.b, bins, &t.t);
        } else if (nn->parsed()) {
            cmd = "nn-dist";
            params["nmax"] = nmax;
            params["bin_width"] = bin_width;
            rc = strmat_nn_dist(b.b, nmax, bin_width, &t.t);
        } else if (fitg->parsed()) {
            cmd = "fit-gamma";
            params["nmax"] = nmax;
            rc = strmat_fit_gamma(b.b, nmax, &t.t);
        } else if (ff->parsed()) {
            cmd = "form-factor";
            params["tau_min"] = tau_min;
            params["tau_max"] = tau_max;
            params["tau_step"] = tau_step;
            params["window"] = window_only;
            rc = strmat_form_factor(b.b, tau_min, tau_max, tau_step, window_only, &t.t);
        } else {
            cmd = "number-variance";
            params["lmax"] = lmax;
            rc = strmat_number_variance(b.b, lmax, &t.t);
        }
        if (rc) return fail(rc);
        Manifest m(cmd, params);
        m.bind_input(b.b);
        m.wall_seconds = seconds_since(t0);
        return write_table_csv(out_path, t.t, m);
    }

    if (fractal->parsed()) {
        if (dims.size() != counts.size()) {
            std::fprintf(stderr, "error: --dims and --counts must have equal length\n");
            return STRMAT_EINVAL;
        }
        TableGuard t;
        if (int rc = strmat_fractal(ensemble.c_str(), seed, dims.data(), counts.data(),
                                    dims.size(), workers, &t.t))
            return fail(rc);
        json params;
        params["ensemble"] = ensemble;
        params["seed"] = seed;
        params["dims"] = dims;
        params["counts"] = counts;
        Manifest m("fractal", params);
        m.wall_seconds = seconds_since(t0);
        return write_table_csv(out_path, t.t, m);
    }

    if (theory->parsed()) {
        if (law_opt->count() == 0 && plasma_opt->count() == 0) {
            std::fprintf(stderr, "error: theory needs --law p,k or --plasma 1|2\n");
            return STRMAT_EINVAL;
        }
        TableGuard t;
        json params;
        params["smax"] = smax;
        params["step"] = step;
        if (plasma_opt->count() > 0) {
            params["plasma"] = plasma;
            if (int rc = strmat_theory_plasma(plasma, smax, step, &t.t)) return fail(rc);
        } else {
            int p = 0, k = -1;
            if (std::sscanf(law.c_str(), "%d,%d", &p, &k) != 2) {
                std::fprintf(stderr, "error: --law expects \"p,k\"\n");
                return STRMAT_EINVAL;
            }
            params["law"] = law;
            if (int rc = strmat_theory_law(p, k, smax, step, &t.t)) return fail(rc);
        }
        Manifest m("theory", params);
        m.wall_seconds = seconds_since(t0);
        return write_table_csv(out_path, t.t, m);
    }

    if (zm->parsed()) {
        TableGuard t;
        if (int rc = strmat_zero_modes(ensemble.c_str(), nmax, &t.t)) return fail(rc);
        std::printf("%-4s %-5s %-11s %-11s %-5s %-7s %s\n", "n", "dim", "parameters",
                    "zero_modes", "q_n", "gamma", "gamma_closed_form");
        for (size_t r = 0; r < strmat_table_rows(t.t); ++r) {
            std::printf("%-4g %-5g %-11g %-11g %-5g %-7g %g", strmat_table_get(t.t, r, 0),
                        strmat_table_get(t.t, r, 1), strmat_table_get(t.t, r, 2),
                        strmat_table_get(t.t, r, 3), strmat_table_get(t.t, r, 4),
                        strmat_table_get(t.t, r, 5), strmat_table_get(t.t, r, 6));
            const bool ok = strmat_table_get(t.t, r, 5) == strmat_table_get(t.t, r, 6);
            std::printf("  %s\n", ok ? "ok" : "MISMATCH");
        }
        return 0;
    }

    if (disp->parsed()) {
        size_t max_rank = 0;
        if (int rc = strmat_displacement_check(ensemble.c_str(), disp_dim, trials, seed, &max_rank))
            return fail(rc);
        std::printf("%s: max displacement rank %zu over %zu draws at N = %zu\n", ensemble.c_str(),
                    max_rank, trials, disp_dim);
        return 0;
    }

    return STRMAT_EINVAL;
}
