// qpt_main.cpp — CLI: one subcommand per experiment-level sweep plus IV/KK
// table dumps. Emits CSV (header + unit row) with a JSON metadata sidecar.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qpt/config.hpp"
#include "qpt/constants.hpp"
#include "qpt/errors.hpp"

namespace fs = std::filesystem;
using namespace qpt;

namespace {

struct CommonArgs {
    std::string config_path;
    std::vector<std::string> overrides;
    int threads = 0;
    std::string outdir;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("-c,--config", args.config_path, "JSON config file");
    cmd->add_option("--set", args.overrides, "override a config key, e.g. mode.cutoff=12");
    cmd->add_option("--threads", args.threads, "worker threads for sweeps");
    cmd->add_option("-o,--outdir", args.outdir, "output directory");
}

RunConfig make_config(const CommonArgs& args) {
    RunConfig cfg;
    if (!args.config_path.empty()) cfg = RunConfig::load(args.config_path);
    for (const auto& kv : args.overrides) cfg.set(kv);
    if (args.threads > 0) cfg.threads = args.threads;
    if (!args.outdir.empty()) cfg.output_dir = args.outdir;
    return cfg;
}

std::string out_path(const RunConfig& cfg, const std::string& stem) {
    fs::create_directories(cfg.output_dir);
    return (fs::path(cfg.output_dir) / (cfg.prefix + "_" + stem + ".csv")).string();
}

void cmd_iv(const RunConfig& cfg, bool with_kk) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    std::vector<std::vector<double>> rows;
    const auto& g = model.iv.grid();
    for (Eigen::Index k = 0; k < g.size(); ++k) {
        if (with_kk)
            rows.push_back({g(k), model.iv.i_samples()(k), model.iv.ikk_samples()(k)});
        else
            rows.push_back({g(k), model.iv.i_samples()(k)});
    }
    if (with_kk)
        write_csv(out_path(cfg, "kk"), {"V", "I", "IKK"}, {"uV", "nA", "nA"}, rows, cfg);
    else
        write_csv(out_path(cfg, "iv"), {"V", "I"}, {"uV", "nA"}, rows, cfg);
}

void cmd_rates(const RunConfig& cfg) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    const Eigen::VectorXd v = cfg.v_grid_uv.make();
    const auto profiles = rate_profile(v, model.mode, model.iv, model.fc);
    const int n_show = std::min(4, model.mode.cutoff);
    std::vector<std::string> cols{"V"}, units{"uV"};
    for (int n = 1; n <= n_show; ++n) {
        cols.push_back("gamma_" + std::to_string(n));
        units.push_back("MHz");
    }
    std::vector<std::vector<double>> rows;
    for (const auto& p : profiles) {
        std::vector<double> row{p.v_uv};
        for (int n = 1; n <= n_show; ++n) row.push_back(p.gamma_mhz(n));
        rows.push_back(std::move(row));
    }
    write_csv(out_path(cfg, "rates"), cols, units, rows, cfg,
              "loss rates gamma_n/2pi per Fock state");
}

void cmd_lamb(const RunConfig& cfg) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    const Eigen::VectorXd v = cfg.v_grid_uv.make();
    const int n_show = std::min(4, model.mode.cutoff);
    std::vector<double> baseline(n_show + 1);
    for (int n = 0; n <= n_show; ++n)
        baseline[n] =
            lamb_shift_n(cfg.lamb_reference_uv, n, model.mode, model.iv, model.fc);

    std::vector<std::string> cols{"V"}, units{"uV"};
    for (int n = 0; n <= n_show; ++n) {
        cols.push_back("dw_" + std::to_string(n));
        units.push_back("MHz");
    }
    cols.insert(cols.end(), {"w01_shift", "w12_shift", "classical_shift"});
    units.insert(units.end(), {"MHz", "MHz", "MHz"});

    std::vector<std::vector<double>> rows;
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        std::vector<double> row{v(k)};
        std::vector<double> dw(n_show + 1);
        for (int n = 0; n <= n_show; ++n) {
            dw[n] = lamb_shift_n(v(k), n, model.mode, model.iv, model.fc);
            row.push_back(dw[n] - baseline[n]);
        }
        row.push_back(dw[1] - dw[0]);
        row.push_back(n_show >= 2 ? dw[2] - dw[1] : 0.0);
        row.push_back(classical_shift(v(k), model.mode, model.iv));
        rows.push_back(std::move(row));
    }
    write_csv(out_path(cfg, "lamb"), cols, units, rows, cfg,
              "Fock-state Lamb shifts relative to the reference bias");
}

void write_spectrum(const RunConfig& cfg, const SpectrumResult& res,
                    const std::string& stem) {
    std::vector<std::vector<double>> rows;
    for (Eigen::Index i = 0; i < res.v_grid_uv.size(); ++i)
        for (Eigen::Index j = 0; j < res.f_grid_ghz.size(); ++j)
            rows.push_back({res.v_grid_uv(i), res.f_grid_ghz(j),
                            res.s11(i, j).real(), res.s11(i, j).imag(),
                            std::norm(res.s11(i, j))});
    write_csv(out_path(cfg, stem), {"V", "omega", "re_s11", "im_s11", "abs2"},
              {"uV", "GHz", "1", "1", "1"}, rows, cfg);

    std::vector<std::vector<double>> fits;
    for (Eigen::Index i = 0; i < res.v_grid_uv.size(); ++i)
        fits.push_back({res.v_grid_uv(i), res.center_ghz(i), res.fwhm_mhz(i),
                        res.depth(i), res.fit_ok[i] ? 1.0 : 0.0});
    write_csv(out_path(cfg, stem + "_fit"),
              {"V", "center", "fwhm", "depth", "fit_ok"},
              {"uV", "GHz", "MHz", "1", "bool"}, fits, cfg);
}

void cmd_spectrum(const RunConfig& cfg) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    SolverOptions opt{cfg.variant(), cfg.threads};
    const auto res = spectrum_map(model, cfg.v_grid_uv.make(), cfg.f_grid_ghz.make(),
                                  cfg.probe_eta_mhz, opt);
    write_spectrum(cfg, res, "spectrum");
}

void cmd_zeno(const RunConfig& cfg) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    SolverOptions opt{cfg.variant(), cfg.threads};
    const auto sweep = zeno_sweep(model, cfg.zeno_bias_uv, cfg.eta_grid_mhz.make(), opt);
    std::vector<std::vector<double>> rows;
    for (const auto& pt : sweep) {
        std::vector<double> row{pt.eta_mhz, pt.abs_a_sq, pt.tls_abs_a_sq,
                                pt.gamma_fit_mhz, pt.n_mean};
        for (int n = 0; n < std::min<int>(4, pt.populations.size()); ++n)
            row.push_back(pt.populations(n));
        rows.push_back(std::move(row));
    }
    write_csv(out_path(cfg, "zeno"),
              {"eta", "abs_a_sq", "tls_ref", "gamma_fit", "n_mean", "p0", "p1", "p2", "p3"},
              {"MHz", "1", "1", "MHz", "1", "1", "1", "1", "1"}, rows, cfg,
              "resonant-drive saturation sweep at zeno.bias_uv");
}

void cmd_twotone(const RunConfig& cfg) {
    const Model model = Model::build(cfg.junction, cfg.mode, cfg.iv_spacing_uv);
    SolverOptions opt{cfg.variant(), cfg.threads};
    const auto res = two_tone(model, cfg.v_grid_uv.make(), cfg.f_grid_ghz.make(),
                              cfg.twotone_eta2_mhz, cfg.tone1_rate_mhz,
                              cfg.method(), opt);
    write_spectrum(cfg, res, "twotone");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"voltage-biased tunnel junction / high-impedance mode simulator"};
    app.require_subcommand(1);

    CommonArgs args;
    const char* names[] = {"iv", "kk", "rates", "lamb", "spectrum", "zeno", "twotone"};
    const char* descs[] = {"tabulated quasiparticle I(V)",
                           "I(V) and its Kramers-Kronig transform",
                           "Fock-state loss rates vs bias",
                           "Fock-state Lamb shifts vs bias",
                           "reflection map vs (bias, probe frequency)",
                           "pump-amplitude saturation sweep",
                           "two-tone probe of the 1->2 transition"};
    for (int k = 0; k < 7; ++k) add_common(app.add_subcommand(names[k], descs[k]), args);

    CLI11_PARSE(app, argc, argv);
    const std::string sub = app.get_subcommands().front()->get_name();

    RunConfig cfg;
    try {
        cfg = make_config(args);
    } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (sub == "iv") cmd_iv(cfg, false);
        else if (sub == "kk") cmd_iv(cfg, true);
        else if (sub == "rates") cmd_rates(cfg);
        else if (sub == "lamb") cmd_lamb(cfg);
        else if (sub == "spectrum") cmd_spectrum(cfg);
        else if (sub == "zeno") cmd_zeno(cfg);
        else if (sub == "twotone") cmd_twotone(cfg);
    } catch (const std::exception& e) {
        std::cerr << sub << ": " << e.what() << "\n";
        return 1;
    }
    return 0;
}
