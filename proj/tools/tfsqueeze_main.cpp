// tfsqueeze: signal generation, time-reassigned squeezing transforms,
// concentration metrics, and heatmap rendering over CSV/TFR1 artifacts.

#include <CLI11.hpp>

#include <bit>
#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "tfsq/gd.hpp"
#include "tfsq/io.hpp"
#include "tfsq/metrics.hpp"
#include "tfsq/mwt.hpp"
#include "tfsq/parallel.hpp"
#include "tfsq/render.hpp"
#include "tfsq/signal.hpp"
#include "tfsq/squeeze.hpp"
#include "tfsq/wavelet.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitUsage = 2;

struct TransformParams {
    double omega0 = 6.0;
    double sigma = 1.0;
    std::size_t k_min = 1;
    double upsilon = 1e-3;
    bool absolute_threshold = false;
    int iters = 10;
    std::string iter_mode = "linear";
    int threads = 0;  // 0 = unset, fall back to env/default

    tfsq::WaveletSpec spec() const { return {omega0, sigma}; }
    tfsq::ThresholdConfig threshold() const { return {upsilon, !absolute_threshold}; }
    int resolved_threads() const { return threads > 0 ? threads : tfsq::default_thread_count(); }
    tfsq::IterMode mode() const {
        return iter_mode == "exp" ? tfsq::IterMode::exponential : tfsq::IterMode::linear;
    }
};

void add_transform_flags(CLI::App* cmd, TransformParams& p) {
    cmd->add_option("--omega0", p.omega0, "Wavelet carrier [rad]")->capture_default_str();
    cmd->add_option("--sigma", p.sigma, "Gaussian shape parameter")->capture_default_str();
    cmd->add_option("--kmin", p.k_min, "First analyzed FFT bin")->capture_default_str();
    cmd->add_option("--upsilon", p.upsilon, "Support threshold (relative to max|W| unless --absolute-threshold)")
        ->capture_default_str();
    cmd->add_flag("--absolute-threshold", p.absolute_threshold,
                  "Interpret --upsilon as an absolute magnitude");
    cmd->add_option("--threads", p.threads,
                    "Worker threads (default: TFSQUEEZE_THREADS env or 1)");
}

struct SqueezePipeline {
    tfsq::TFMatrix W;
    tfsq::GDMap gd;
};

SqueezePipeline run_pipeline(const tfsq::DiscreteSignal& x, const TransformParams& p) {
    const auto spec = p.spec();
    const auto grid = tfsq::make_scale_grid(x.size(), x.fs, spec, p.k_min);
    SqueezePipeline out;
    out.W = tfsq::mwt(x, grid, spec, tfsq::WindowWeight::plain, p.resolved_threads());
    const auto Wtg =
        tfsq::mwt(x, grid, spec, tfsq::WindowWeight::time_weighted, p.resolved_threads());
    out.gd = tfsq::gd_estimate(out.W, Wtg, spec, p.threshold());
    return out;
}

// max over rows of |sum_tau S[k,tau] - sum of squeezed W cells|
double conservation_residual(const tfsq::TFMatrix& S, const tfsq::TFMatrix& W,
                             const tfsq::GDMap& gd) {
    double worst = 0.0;
    const auto cols = static_cast<long>(W.cols);
    for (std::size_t k = 0; k < W.rows; ++k) {
        std::complex<double> sum_s{0.0, 0.0}, sum_w{0.0, 0.0};
        for (std::size_t n = 0; n < W.cols; ++n) {
            sum_s += S.at(k, n);
            if (!gd.valid(k, n)) continue;
            const long tau = static_cast<long>(std::round(gd.delay(k, n)));
            if (tau < 0 || tau >= cols) continue;
            sum_w += W.at(k, n);
        }
        worst = std::max(worst, std::abs(sum_s - sum_w));
    }
    return worst;
}

int cmd_gen(const std::string& kind, double fs, std::size_t len, double t0,
            double period_ms, double carrier, double decay, int n_pulses,
            const std::array<double, 3>& beta, double omega_lo_frac, double omega_hi_frac,
            double snr_db, std::uint64_t seed, const std::string& out) {
    tfsq::DiscreteSignal x;
    if (kind == "dirac") {
        x = tfsq::synth_dirac(t0, len, fs);
    } else if (kind == "chirp") {
        tfsq::ChirpModel model;
        model.beta = beta;
        const double w_ny = std::numbers::pi * fs;
        model.omega_lo = omega_lo_frac * w_ny;
        model.omega_hi = omega_hi_frac * w_ny;
        x = tfsq::synth_gd_chirp(model, len, fs);
    } else if (kind == "pulses") {
        if (n_pulses == 0)
            n_pulses = static_cast<int>(static_cast<double>(len) / (period_ms * 1e-3 * fs));
        x = tfsq::synth_pulse_train(period_ms * 1e-3, n_pulses, len, fs,
                                    {carrier, decay});
    } else {
        x = tfsq::synth_two_mode(len, fs);
    }
    if (std::isfinite(snr_db)) x = tfsq::add_noise_snr(x, snr_db, seed);
    tfsq::write_signal_csv(out, x);
    std::printf("wrote %s: kind=%s len=%zu fs=%g power=%.6g\n", out.c_str(), kind.c_str(),
                x.size(), x.fs, x.power());
    return kExitOk;
}

int cmd_transform(const std::string& method, const std::string& in, const std::string& out,
                  const TransformParams& p, const std::string& reconstruct) {
    if (method == "wtmsst" && p.mode() == tfsq::IterMode::exponential &&
        !std::has_single_bit(static_cast<unsigned>(p.iters)))
        throw CLI::ValidationError(
            "--iters must be a power of two with --iter-mode exp; use --iter-mode linear "
            "for iters=" + std::to_string(p.iters));

    const auto x = tfsq::read_signal_csv(in);
    const auto spec = p.spec();
    const auto grid = tfsq::make_scale_grid(x.size(), x.fs, spec, p.k_min);

    if (method == "mwt") {
        const auto W = tfsq::mwt(x, grid, spec, tfsq::WindowWeight::plain, p.resolved_threads());
        tfsq::write_tfr(out, W);
        std::printf("wrote %s: mwt K=%zu L=%zu max|W|=%.6g\n", out.c_str(), W.rows, W.cols,
                    W.max_abs());
        return kExitOk;
    }

    auto pipe = run_pipeline(x, p);
    if (method == "rm") {
        const auto Wxi = tfsq::mwt(x, grid, spec, tfsq::WindowWeight::freq_weighted,
                                   p.resolved_threads());
        const auto ifm = tfsq::if_estimate(pipe.W, Wxi, spec, p.threshold());
        const auto R = tfsq::rm(pipe.W, pipe.gd, ifm);
        tfsq::write_tfr_real(out, R, static_cast<std::uint32_t>(pipe.W.rows),
                             static_cast<std::uint32_t>(pipe.W.cols), x.fs, x.t0);
        std::printf("wrote %s: rm K=%zu L=%zu (energy map, not invertible)\n", out.c_str(),
                    pipe.W.rows, pipe.W.cols);
        return kExitOk;
    }

    tfsq::SqueezeResult S;
    if (method == "wtsst")
        S = tfsq::wtsst(pipe.W, pipe.gd, p.threshold());
    else
        S = tfsq::wtmsst(pipe.W, pipe.gd, p.iters, p.mode(), p.threshold());
    tfsq::write_tfr(out, S.S);
    std::printf("wrote %s: %s K=%zu L=%zu\n", out.c_str(), method.c_str(), S.S.rows, S.S.cols);
    std::printf("conservation residual (max over rows): %.3e\n",
                conservation_residual(S.S, pipe.W, pipe.gd));

    if (!reconstruct.empty()) {
        const auto y = tfsq::reconstruct_time(S, spec);
        tfsq::write_signal_csv(reconstruct, y);
        const auto ref = tfsq::synthesize_time(tfsq::analytic_spectrum(x), x.fs, x.t0);
        const auto err = tfsq::reconstruction_error(ref, y);
        std::printf("reconstruction rel_l2=%.6g snr_db=%.3f (vs analytic input)\n",
                    err.rel_l2, err.snr_db);
    }
    return kExitOk;
}

int cmd_metrics_entropy(const std::string& in, double alpha, const std::string& sweep,
                        int trials, std::uint64_t seed, std::size_t len, double fs,
                        const TransformParams& p, const std::string& out) {
    if (sweep.empty()) {
        const auto d = tfsq::read_tfr(in);
        const double h = d.kind == tfsq::TfrKind::complex_matrix
                             ? tfsq::renyi_entropy(d.to_tfmatrix(), alpha)
                             : tfsq::renyi_entropy(d.rdata, alpha);
        std::printf("renyi_entropy alpha=%g: %.6f bits\n", alpha, h);
        return kExitOk;
    }

    double lo = 0.0, hi = 0.0, step = 1.0;
    const int got = std::sscanf(sweep.c_str(), "%lf:%lf:%lf", &lo, &hi, &step);
    if (got < 2 || step <= 0.0 || hi < lo)
        throw CLI::ValidationError("--sweep-snr expects lo:hi[:step] with step > 0");

    const auto clean = tfsq::synth_two_mode(len, fs);
    const auto spec = p.spec();
    const auto grid = tfsq::make_scale_grid(len, fs, spec, p.k_min);

    std::ofstream os(out);
    if (!os) throw std::runtime_error(out + ": cannot open for writing");
    os << "method,snr_db,alpha,entropy\n";
    for (double snr = lo; snr <= hi + 1e-9; snr += step) {
        double h_mwt = 0.0, h_sst = 0.0, h_msst = 0.0;
        for (int t = 0; t < trials; ++t) {
            const auto noisy = tfsq::add_noise_snr(clean, snr, seed + static_cast<std::uint64_t>(t));
            const auto W = tfsq::mwt(noisy, grid, spec, tfsq::WindowWeight::plain,
                                     p.resolved_threads());
            const auto Wtg = tfsq::mwt(noisy, grid, spec, tfsq::WindowWeight::time_weighted,
                                       p.resolved_threads());
            const auto gd = tfsq::gd_estimate(W, Wtg, spec, p.threshold());
            h_mwt += tfsq::renyi_entropy(W, alpha);
            h_sst += tfsq::renyi_entropy(tfsq::wtsst(W, gd).S, alpha);
            h_msst += tfsq::renyi_entropy(
                tfsq::wtmsst(W, gd, p.iters, p.mode()).S, alpha);
        }
        const double inv = 1.0 / trials;
        char line[160];
        std::snprintf(line, sizeof line, "mwt,%g,%g,%.6f\nwtsst,%g,%g,%.6f\nwtmsst,%g,%g,%.6f\n",
                      snr, alpha, h_mwt * inv, snr, alpha, h_sst * inv, snr, alpha,
                      h_msst * inv);
        os << line;
    }
    if (!os) throw std::runtime_error(out + ": write error");
    std::printf("wrote %s\n", out.c_str());
    return kExitOk;
}

int cmd_metrics_tfes(const std::string& in, double min_sep, const std::string& out_tfes,
                     const std::string& out_intervals) {
    const auto d = tfsq::read_tfr(in);
    if (d.kind != tfsq::TfrKind::complex_matrix)
        throw std::runtime_error(in + ": tfes needs a complex transform matrix");
    tfsq::SqueezeResult S;
    S.S = d.to_tfmatrix();
    const auto r = tfsq::tfes(S, min_sep);

    std::ofstream os(out_tfes);
    if (!os) throw std::runtime_error(out_tfes + ": cannot open for writing");
    os << "row_hz,spectrum_peak\n";
    const double hz_step = d.fs / static_cast<double>(d.cols);
    for (std::size_t k = 0; k < r.spectrum_peak.size(); ++k) {
        char line[96];
        std::snprintf(line, sizeof line, "%.9g,%.9g\n",
                      static_cast<double>(S.S.k_min + k) * hz_step, r.spectrum_peak[k]);
        os << line;
    }
    if (!os) throw std::runtime_error(out_tfes + ": write error");

    std::ofstream oi(out_intervals);
    if (!oi) throw std::runtime_error(out_intervals + ": cannot open for writing");
    oi << "t_start_s,interval_s\n";
    double t_start = 0.0;
    for (double dt : r.intervals_s) {
        char line[80];
        std::snprintf(line, sizeof line, "%.9g,%.9g\n", t_start, dt);
        oi << line;
        t_start += dt;
    }
    if (!oi) throw std::runtime_error(out_intervals + ": write error");

    std::printf("best row: %.6g Hz; envelope-spectrum peak bin %zu (%.6g Hz); %zu intervals\n",
                static_cast<double>(S.S.k_min + r.best_row) * hz_step, r.peak_bin[r.best_row],
                static_cast<double>(r.peak_bin[r.best_row]) * hz_step, r.intervals_s.size());
    std::printf("wrote %s, %s\n", out_tfes.c_str(), out_intervals.c_str());
    return kExitOk;
}

int cmd_metrics_recon(const std::string& in, const std::string& ref) {
    const auto x = tfsq::read_signal_csv(ref);
    const auto y = tfsq::read_signal_csv(in);
    const auto e = tfsq::reconstruction_error(x, y);
    std::printf("rel_l2=%.6g snr_db=%.3f\n", e.rel_l2, e.snr_db);
    return kExitOk;
}

int cmd_render(const std::string& in, const std::string& out, const std::string& scale,
               const std::string& colormap) {
    const auto d = tfsq::read_tfr(in);
    std::vector<double> mag;
    if (d.kind == tfsq::TfrKind::complex_matrix) {
        mag.resize(d.cdata.size());
        for (std::size_t i = 0; i < mag.size(); ++i) mag[i] = std::abs(d.cdata[i]);
    } else {
        mag = d.rdata;
    }
    tfsq::RenderOptions opts;
    opts.log_scale = scale == "log";
    opts.colormap = colormap;
    tfsq::render_heatmap_png(out, mag, d.rows, d.cols, d.fs, d.t0, d.cols / 2 - d.rows + 1,
                             opts);
    std::printf("wrote %s (%ux%u, %s, %s)\n", out.c_str(), d.cols, d.rows, scale.c_str(),
                colormap.c_str());
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wavelet-based time-reassigned synchrosqueezing toolkit"};
    app.require_subcommand(1);

    // gen
    std::string gen_kind, gen_out;
    double gen_fs = 0.0, gen_t0 = 0.5, gen_period_ms = 9.3, gen_carrier = 1060.0;
    double gen_decay = 800.0, gen_lo = 0.1, gen_hi = 0.45;
    double gen_snr = std::numeric_limits<double>::infinity();
    std::array<double, 3> gen_beta{0.0, -0.5, 0.0};
    std::size_t gen_len = 0;
    int gen_pulses = 0;  // 0 = as many as fit
    std::uint64_t gen_seed = 1;
    auto* gen = app.add_subcommand("gen", "Generate a test signal CSV");
    gen->add_option("kind", gen_kind, "dirac|chirp|pulses|twomode")
        ->required()
        ->check(CLI::IsMember({"dirac", "chirp", "pulses", "twomode"}));
    gen->add_option("--fs", gen_fs, "Sample rate [Hz]")->required();
    gen->add_option("--len", gen_len, "Number of samples")->required();
    gen->add_option("--t0", gen_t0, "Impulse time [s] (dirac)")->capture_default_str();
    gen->add_option("--period-ms", gen_period_ms, "Pulse period [ms] (pulses)")
        ->capture_default_str();
    gen->add_option("--carrier", gen_carrier, "Pulse carrier [Hz] (pulses)")
        ->capture_default_str();
    gen->add_option("--decay", gen_decay, "Pulse decay [1/s] (pulses)")->capture_default_str();
    gen->add_option("--n-pulses", gen_pulses, "Pulse count, 0 = fill record (pulses)")
        ->capture_default_str();
    gen->add_option("--beta1", gen_beta[1], "Linear phase coefficient [s] (chirp)")
        ->capture_default_str();
    gen->add_option("--beta2", gen_beta[2], "Quadratic phase coefficient [s^2] (chirp)")
        ->capture_default_str();
    gen->add_option("--omega-lo", gen_lo, "Band low edge as a fraction of Nyquist (chirp)")
        ->capture_default_str();
    gen->add_option("--omega-hi", gen_hi, "Band high edge as a fraction of Nyquist (chirp)")
        ->capture_default_str();
    gen->add_option("--snr", gen_snr, "Add white noise at this SNR [dB]");
    gen->add_option("--seed", gen_seed, "Noise seed")->capture_default_str();
    gen->add_option("--out", gen_out, "Output CSV path")->required();

    // transform
    std::string tr_method, tr_in, tr_out, tr_recon;
    TransformParams tr;
    auto* transform = app.add_subcommand("transform", "Run a transform and write a TFR1 file");
    transform->add_option("method", tr_method, "mwt|wtsst|wtmsst|rm")
        ->required()
        ->check(CLI::IsMember({"mwt", "wtsst", "wtmsst", "rm"}));
    transform->add_option("--in", tr_in, "Input signal CSV")->required();
    transform->add_option("--out", tr_out, "Output TFR1 path")->required();
    add_transform_flags(transform, tr);
    transform->add_option("--iters", tr.iters, "Squeezing iterations N (wtmsst)")
        ->capture_default_str();
    transform->add_option("--iter-mode", tr.iter_mode, "linear|exp (wtmsst)")
        ->capture_default_str()
        ->check(CLI::IsMember({"linear", "exp"}));
    transform->add_option("--reconstruct", tr_recon,
                          "Also invert the squeezed transform to this CSV");

    // metrics
    auto* metrics = app.add_subcommand("metrics", "Concentration and reconstruction metrics");
    metrics->require_subcommand(1);

    std::string ent_in, ent_sweep, ent_out = "entropy.csv";
    double ent_alpha = 3.0, ent_fs = 2048.0;
    int ent_trials = 5;
    std::uint64_t ent_seed = 7;
    std::size_t ent_len = 1024;
    TransformParams ent_params;
    auto* entropy = metrics->add_subcommand("entropy", "Renyi entropy of a TFR or an SNR sweep");
    entropy->add_option("--in", ent_in, "Input TFR1 file (single-shot mode)");
    entropy->add_option("--alpha", ent_alpha, "Renyi order")->capture_default_str();
    entropy->add_option("--sweep-snr", ent_sweep,
                        "lo:hi[:step] dB sweep over the built-in two-mode signal");
    entropy->add_option("--trials", ent_trials, "Noise realizations per SNR")
        ->capture_default_str();
    entropy->add_option("--seed", ent_seed, "Base noise seed")->capture_default_str();
    entropy->add_option("--len", ent_len, "Sweep signal length")->capture_default_str();
    entropy->add_option("--fs", ent_fs, "Sweep sample rate [Hz]")->capture_default_str();
    entropy->add_option("--out", ent_out, "Sweep output CSV")->capture_default_str();
    add_transform_flags(entropy, ent_params);
    entropy->add_option("--iters", ent_params.iters, "wtmsst iterations in the sweep")
        ->capture_default_str();

    std::string tfes_in, tfes_out = "tfes.csv", tfes_intervals = "intervals.csv";
    double tfes_min_sep = 1e-3;
    auto* tfes_cmd = metrics->add_subcommand("tfes", "Time-frequency envelope spectrum");
    tfes_cmd->add_option("--in", tfes_in, "Input TFR1 file")->required();
    tfes_cmd->add_option("--min-separation", tfes_min_sep, "Peak separation [s]")
        ->capture_default_str();
    tfes_cmd->add_option("--out", tfes_out, "Per-row spectrum peak CSV")->capture_default_str();
    tfes_cmd->add_option("--intervals-out", tfes_intervals, "Pulse interval CSV")
        ->capture_default_str();

    std::string rec_in, rec_ref;
    auto* recon = metrics->add_subcommand("recon-error", "Compare two signal CSVs");
    recon->add_option("--in", rec_in, "Reconstructed signal CSV")->required();
    recon->add_option("--ref", rec_ref, "Reference signal CSV")->required();

    // render
    std::string ren_in, ren_out, ren_scale = "linear", ren_cmap = "viridis";
    auto* render = app.add_subcommand("render", "Render a TFR1 file to a PNG heatmap");
    render->add_option("--in", ren_in, "Input TFR1 file")->required();
    render->add_option("--out", ren_out, "Output PNG path")->required();
    render->add_option("--scale", ren_scale, "linear|log")
        ->capture_default_str()
        ->check(CLI::IsMember({"linear", "log"}));
    render->add_option("--colormap", ren_cmap, "viridis|gray")
        ->capture_default_str()
        ->check(CLI::IsMember({"viridis", "gray"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (gen->parsed())
            return cmd_gen(gen_kind, gen_fs, gen_len, gen_t0, gen_period_ms, gen_carrier,
                           gen_decay, gen_pulses, gen_beta, gen_lo, gen_hi, gen_snr, gen_seed,
                           gen_out);
        if (transform->parsed())
            return cmd_transform(tr_method, tr_in, tr_out, tr, tr_recon);
        if (metrics->parsed()) {
            if (entropy->parsed()) {
                if (ent_in.empty() && ent_sweep.empty())
                    throw CLI::ValidationError("entropy needs --in or --sweep-snr");
                return cmd_metrics_entropy(ent_in, ent_alpha, ent_sweep, ent_trials, ent_seed,
                                           ent_len, ent_fs, ent_params, ent_out);
            }
            if (tfes_cmd->parsed())
                return cmd_metrics_tfes(tfes_in, tfes_min_sep, tfes_out, tfes_intervals);
            return cmd_metrics_recon(rec_in, rec_ref);
        }
        return cmd_render(ren_in, ren_out, ren_scale, ren_cmap);
    } catch (const CLI::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}
