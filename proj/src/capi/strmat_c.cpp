#include "strmat.h"

#include <chrono>
#include <cstring>
#include <string>

#include "core/batch_io.hpp"
#include "core/errors.hpp"
#include "core/parallel.hpp"
#include "core/pipeline.hpp"
#include "core/rng.hpp"

using namespace strmat;

struct strmat_batch {
    SpectraBatch b;
    mutable std::string manifest;  // cached for pointer stability
};

struct strmat_table {
    Table t;
};

namespace {

thread_local std::string g_last_error;

template <typename Fn>
int guarded(Fn&& fn) {
    try {
        fn();
        g_last_error.clear();
        return STRMAT_OK;
    } catch (const std::invalid_argument& e) {
        g_last_error = e.what();
        return STRMAT_EINVAL;
    } catch (const IoError& e) {
        g_last_error = e.what();
        return STRMAT_EIO;
    } catch (const NumericError& e) {
        g_last_error = e.what();
        return STRMAT_ENUMERIC;
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return STRMAT_ENUMERIC;
    }
}

int require(bool cond, const char* msg) {
    if (cond) return STRMAT_OK;
    g_last_error = msg;
    return STRMAT_EINVAL;
}

GenerateOptions make_options(const char* ensemble, size_t dim, size_t count, uint64_t seed,
                             size_t workers) {
    GenerateOptions opt;
    opt.kind = ensemble_from_name(ensemble ? ensemble : "");
    opt.dim = dim;
    opt.count = count;
    opt.seed = seed;
    opt.workers = workers;
    return opt;
}

int table_out(Table t, strmat_table** out) {
    *out = new strmat_table{std::move(t)};
    return STRMAT_OK;
}

}  // namespace

extern "C" {

const char* strmat_version(void) { return "1.0.0"; }
const char* strmat_rng_name(void) { return rng_name(); }
const char* strmat_last_error(void) { return g_last_error.c_str(); }
uint64_t strmat_fnv1a64(const void* data, size_t len) { return fnv1a64(data, len); }

int strmat_generate(const char* ensemble, size_t dim, size_t count, uint64_t seed,
                    size_t workers, strmat_batch** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        auto* h = new strmat_batch;
        h->b = generate_batch(make_options(ensemble, dim, count, seed, workers));
        *out = h;
    });
}

int strmat_generate_to_dir(const char* ensemble, size_t dim, size_t count, uint64_t seed,
                           size_t workers, const char* dir, int with_vectors,
                           strmat_batch** out) {
    if (int rc = require(dir != nullptr, "null output directory")) return rc;
    return guarded([&] {
        const auto t0 = std::chrono::steady_clock::now();
        GenerateOptions opt = make_options(ensemble, dim, count, seed, workers);
        SpectraBatch b;
        if (with_vectors) {
            VectorFileWriter writer(dir, dim);
            b = generate_batch_with_vectors(
                opt, [&](std::size_t, const CMatrix& v) { writer.append(v); });
            writer.close();
        } else {
            b = generate_batch(opt);
        }
        RunInfo run;
        run.wall_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        run.workers = static_cast<std::size_t>(resolve_workers(static_cast<int>(workers)));
        save_batch(b, dir, run);
        if (out) *out = new strmat_batch{std::move(b), {}};
    });
}

int strmat_batch_save(const strmat_batch* b, const char* dir) {
    if (int rc = require(b && dir, "null argument")) return rc;
    return guarded([&] { save_batch(b->b, dir); });
}

int strmat_batch_load(const char* dir, strmat_batch** out) {
    if (int rc = require(dir && out, "null argument")) return rc;
    return guarded([&] { *out = new strmat_batch{load_batch(dir), {}}; });
}

void strmat_batch_free(strmat_batch* b) { delete b; }

size_t strmat_batch_dim(const strmat_batch* b) { return b ? b->b.dim : 0; }
size_t strmat_batch_count(const strmat_batch* b) { return b ? b->b.count : 0; }
double strmat_batch_sigma(const strmat_batch* b) { return b ? b->b.sigma : 0.0; }
uint64_t strmat_batch_seed(const strmat_batch* b) { return b ? b->b.seed : 0; }

const char* strmat_batch_ensemble(const strmat_batch* b) {
    return b ? ensemble_name(b->b.kind) : "";
}

const char* strmat_batch_manifest(const strmat_batch* b) {
    if (!b) return "";
    if (b->manifest.empty()) b->manifest = batch_manifest(b->b);
    return b->manifest.c_str();
}

uint64_t strmat_batch_manifest_hash(const strmat_batch* b) {
    return b ? batch_manifest_hash(b->b) : 0;
}

int strmat_batch_eigenvalues(const strmat_batch* b, size_t realization, const double** row,
                             size_t* len) {
    if (int rc = require(b && row && len, "null argument")) return rc;
    if (int rc = require(realization < b->b.rows.size(), "realization out of range")) return rc;
    *row = b->b.rows[realization].data();
    *len = b->b.rows[realization].size();
    return STRMAT_OK;
}

int strmat_density(const strmat_batch* b, size_t bins, strmat_table** out) {
    if (int rc = require(b && out, "null argument")) return rc;
    return guarded([&] { table_out(density_table(b->b, bins), out); });
}

int strmat_nn_dist(const strmat_batch* b, size_t n_max, double bin_width, strmat_table** out) {
    if (int rc = require(b && out, "null argument")) return rc;
    return guarded([&] { table_out(nn_dist_table(b->b, n_max, bin_width), out); });
}

int strmat_fit_gamma(const strmat_batch* b, size_t n_max, strmat_table** out) {
    if (int rc = require(b && out, "null argument")) return rc;
    return guarded([&] { table_out(fit_gamma_table(b->b, n_max), out); });
}

int strmat_form_factor(const strmat_batch* b, double tau_min, double tau_max, double tau_step,
                       int window_only, strmat_table** out) {
    if (int rc = require(b && out, "null argument")) return rc;
    return guarded(
        [&] { table_out(form_factor_table(b->b, tau_min, tau_max, tau_step, window_only), out); });
}

int strmat_number_variance(const strmat_batch* b, double l_max, strmat_table** out) {
    if (int rc = require(b && out, "null argument")) return rc;
    return guarded([&] { table_out(number_variance_table(b->b, l_max), out); });
}

int strmat_compressibility(const strmat_batch* b, double* chi, double* chi_stderr) {
    if (int rc = require(b && chi, "null argument")) return rc;
    return guarded([&] {
        UnfoldedSpectrum u = unfold(b->b);
        select_window(u, b->b.kind);
        std::vector<double> grid;
        for (double tau = 0.002; tau <= 0.5 + 1e-12; tau += 0.002) grid.push_back(tau);
        FormFactorCurve k = empirical_form_factor(u, grid, false, true);
        CompressibilityEstimate est = estimate_compressibility(k);
        if (!est.ok) throw NumericError("compressibility: " + est.note);
        *chi = est.chi;
        if (chi_stderr) *chi_stderr = est.stderr_mean;
    });
}

int strmat_fractal(const char* ensemble, uint64_t seed, const size_t* dims, const size_t* counts,
                   size_t rungs, size_t workers, strmat_table** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    if (int rc = require(rungs == 0 || (dims && counts), "null ladder arrays")) return rc;
    return guarded([&] {
        FractalOptions opt;
        opt.kind = ensemble_from_name(ensemble ? ensemble : "");
        opt.seed = seed;
        opt.workers = workers;
        if (rungs > 0) {
            opt.dims.assign(dims, dims + rungs);
            opt.counts.assign(counts, counts + rungs);
        }
        table_out(fractal_scaling(opt).table, out);
    });
}

int strmat_theory_law(int p, int k, double s_max, double step, strmat_table** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] { table_out(theory_law_table(p, k, s_max, step), out); });
}

int strmat_theory_plasma(int model, double s_max, double step, strmat_table** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded([&] { table_out(theory_plasma_table(model, s_max, step), out); });
}

int strmat_zero_modes(const char* ensemble, size_t n_max, strmat_table** out) {
    if (int rc = require(out != nullptr, "null output pointer")) return rc;
    return guarded(
        [&] { table_out(zero_modes_table(ensemble_from_name(ensemble ? ensemble : ""), n_max), out); });
}

int strmat_displacement_check(const char* ensemble, size_t dim, size_t trials, uint64_t seed,
                              size_t* max_rank) {
    if (int rc = require(max_rank != nullptr, "null output pointer")) return rc;
    return guarded([&] {
        *max_rank =
            displacement_check(ensemble_from_name(ensemble ? ensemble : ""), dim, trials, seed)
                .max_rank;
    });
}

const char* strmat_table_name(const strmat_table* t) { return t ? t->t.name.c_str() : ""; }
size_t strmat_table_rows(const strmat_table* t) { return t ? t->t.rows.size() : 0; }
size_t strmat_table_cols(const strmat_table* t) { return t ? t->t.columns.size() : 0; }

const char* strmat_table_column(const strmat_table* t, size_t col) {
    if (!t || col >= t->t.columns.size()) return "";
    return t->t.columns[col].c_str();
}

double strmat_table_get(const strmat_table* t, size_t row, size_t col) {
    if (!t || row >= t->t.rows.size() || col >= t->t.columns.size()) return 0.0;
    return t->t.rows[row][col];
}

void strmat_table_free(strmat_table* t) { delete t; }

}  // extern "C"
