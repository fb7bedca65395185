#include "seqemp/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "seqemp/config.hpp"
#include "seqemp/cpt.hpp"
#include "seqemp/csv.hpp"
#include "seqemp/entropy.hpp"
#include "seqemp/report.hpp"
#include "seqemp/seriesgen.hpp"
#include "seqemp/setar.hpp"
#include "seqemp/verify.hpp"

namespace seqemp {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitReject = 2;

Innovation innovation_from_config(const Config& cfg, const std::string& prefix) {
    const std::string kind = cfg.get_or<std::string>(prefix + "innovation", "gaussian");
    const double sigma = cfg.get_or<double>(prefix + "sigma", 1.0);
    if (kind == "gaussian") return Innovation::gaussian(sigma);
    if (kind == "student-t") {
        return Innovation::student_t(static_cast<int>(cfg.get_int(prefix + "nu")), sigma,
                                     cfg.get_or<int>(prefix + "moment_order", 4));
    }
    if (kind == "mds1") return Innovation::mds1(sigma);
    if (kind == "none") return Innovation::none();
    throw ConfigError("config: unknown innovation '" + kind + "'");
}

// descriptors look like constant(0.5), linear(1,0), sinusoid(1,3,0)
FnDescriptor fn_from_string(const std::string& text) {
    const auto open = text.find('(');
    if (open == std::string::npos || text.back() != ')') {
        throw ConfigError("config: malformed function descriptor '" + text + "'");
    }
    const std::string name = text.substr(0, open);
    std::vector<double> args;
    std::istringstream is(text.substr(open + 1, text.size() - open - 2));
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) args.push_back(std::stod(item));
    }
    if (name == "constant" && args.size() == 1) return FnDescriptor::constant(args[0]);
    if (name == "linear" && args.size() == 2) return FnDescriptor::linear(args[0], args[1]);
    if (name == "sinusoid" && args.size() == 3) {
        return FnDescriptor::sinusoid(args[0], args[1], args[2]);
    }
    throw ConfigError("config: unknown function descriptor '" + text + "'");
}

MixingSpec mixing_from_config(const Config& cfg, const std::string& prefix) {
    const std::string form = cfg.get_or<std::string>(prefix + "mixing", "independent");
    if (form == "independent") return MixingSpec::independent();
    if (form == "m-dependent") {
        return MixingSpec::m_dependent(static_cast<int>(cfg.get_int(prefix + "m")));
    }
    if (form == "polynomial") {
        return MixingSpec::polynomial(cfg.get_double(prefix + "c"),
                                      cfg.get_double(prefix + "beta"));
    }
    if (form == "geometric") {
        return MixingSpec::geometric(cfg.get_double(prefix + "c"),
                                     cfg.get_double(prefix + "rho"));
    }
    throw ConfigError("config: unknown mixing form '" + form + "'");
}

struct CommonFlags {
    std::string config_path;
    std::string out;
    std::string plot_data;
    std::string data_path;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int workers = 1;
};

std::uint64_t master_seed(const Config& cfg, const CommonFlags& flags) {
    if (flags.seed_set) return flags.seed;
    return cfg.get_seed("seed"); // all randomness flows from one master seed
}

int cmd_gen(const CommonFlags& flags) {
    const Config cfg = Config::load(flags.config_path);
    const std::uint64_t seed = master_seed(cfg, flags);
    const std::string out =
        !flags.out.empty() ? flags.out : cfg.get_string("gen.out");
    const std::string kind = cfg.get_string("gen.kind");

    nlohmann::json sidecar{{"schema_version", kSchemaVersion},
                           {"record", "generation"},
                           {"artifact_version", kArtifactVersion},
                           {"kind", kind},
                           {"seed", seed},
                           {"out", out},
                           {"config", config_echo(cfg)}};

    std::ofstream f(out);
    if (!f) throw std::runtime_error("cannot write '" + out + "'");
    if (kind == "setar") {
        const auto n = static_cast<int>(cfg.get_int("gen.n"));
        const UnivariateSeries series =
            gen_setar(n, cfg.get_or<double>("gen.mu1", 0.0), cfg.get_or<double>("gen.mu2", 0.0),
                      cfg.get_or<double>("gen.threshold", 0.0), innovation_from_config(cfg, "gen."),
                      seed, cfg.get_or<int>("gen.burn_in", 0));
        write_series_csv(f, series);
    } else if (kind == "regression") {
        RegressionSpec spec;
        spec.n = static_cast<int>(cfg.get_int("gen.n"));
        spec.d = cfg.get_or<int>("gen.d", 1);
        spec.mean_fn = fn_from_string(cfg.get_or<std::string>("gen.mean", "constant(0)"));
        spec.scale_fn = fn_from_string(cfg.get_or<std::string>("gen.scale", "constant(1)"));
        spec.regressor_law = cfg.get_or<std::string>("gen.regressor_law", "uniform") == "gaussian"
                                 ? RegressionSpec::RegressorLaw::gaussian
                                 : RegressionSpec::RegressorLaw::uniform_cube;
        spec.innovation = innovation_from_config(cfg, "gen.");
        if (cfg.has("gen.mean_after")) {
            spec.mean_fn_after = fn_from_string(cfg.get_string("gen.mean_after"));
            spec.theta = cfg.get_double("gen.theta");
        }
        write_regression_csv(f, gen_regression(spec, seed));
    } else if (kind == "mds") {
        const auto n = static_cast<int>(cfg.get_int("gen.n"));
        const std::vector<double> eps = gen_mds_innovations(n, seed);
        UnivariateSeries series;
        series.values.assign(eps.begin(), eps.end());
        series.values.insert(series.values.begin(), 0.0);
        series.n = eps.size();
        series.origin = "mds";
        write_series_csv(f, series);
    } else {
        throw ConfigError("config: unknown generator kind '" + kind + "'");
    }
    f.close();
    write_json_file(out + ".json", sidecar);
    return kExitOk;
}

SetarTestConfig setar_config_from(const Config& cfg, const CommonFlags& flags) {
    SetarTestConfig tc;
    const std::string stat = cfg.get_or<std::string>("setar_test.statistic", "both");
    if (stat == "ks") tc.statistic = SetarTestConfig::Statistic::ks;
    else if (stat == "cvm") tc.statistic = SetarTestConfig::Statistic::cvm;
    else if (stat == "both") tc.statistic = SetarTestConfig::Statistic::both;
    else throw ConfigError("config: unknown statistic '" + stat + "'");
    tc.level = cfg.get_or<double>("setar_test.level", 0.05);
    tc.ks_source = cfg.get_or<std::string>("setar_test.ks_source", "series") == "monte-carlo"
                       ? SetarTestConfig::KsSource::monte_carlo
                       : SetarTestConfig::KsSource::series;
    tc.cvm_reps = cfg.get_or<long>("setar_test.cvm_reps", 100000L);
    tc.bridge_resolution = cfg.get_or<int>("setar_test.bridge_resolution", 1024);
    tc.seed = master_seed(cfg, flags);
    tc.workers = flags.workers;
    return tc;
}

int cmd_setar_test(const CommonFlags& flags) {
    const Config cfg = Config::load(flags.config_path);
    const UnivariateSeries series = read_series_csv_file(flags.data_path);
    const SetarTestConfig tc = setar_config_from(cfg, flags);
    const SetarReport report = run_setar_test(series, tc);

    nlohmann::json j = to_json(report);
    j["config"] = config_echo(cfg);
    j["data"] = flags.data_path;
    if (!flags.out.empty()) write_json_file(flags.out, j);
    else std::cout << j.dump(2) << '\n';

    if (!flags.plot_data.empty()) {
        const ProcessPath path = t_process(series);
        std::ofstream pf(flags.plot_data);
        if (!pf) throw std::runtime_error("cannot write '" + flags.plot_data + "'");
        pf << "z,value\n";
        char buf[64];
        for (std::size_t zj = 0; zj < path.z_grid.size(); ++zj) {
            std::snprintf(buf, sizeof buf, "%.17g", path.z_grid.scalar_at(zj));
            pf << buf << ',';
            std::snprintf(buf, sizeof buf, "%.17g", path.value(0, zj));
            pf << buf << '\n';
        }
    }
    return report.any_rejection() ? kExitReject : kExitOk;
}

int cmd_cpt_test(const CommonFlags& flags) {
    const Config cfg = Config::load(flags.config_path);
    const RegressionSample sample = read_regression_csv_file(flags.data_path);
    CptConfig cc;
    cc.level = cfg.get_or<double>("cpt_test.level", 0.05);
    cc.s_points = cfg.get_or<int>("cpt_test.s_points", 0);
    cc.z_cap = cfg.get_or<int>("cpt_test.z_cap", 200);
    cc.gamma_reps = cfg.get_or<long>("cpt_test.gamma_reps", 10000L);
    cc.seed = master_seed(cfg, flags);
    cc.workers = flags.workers;
    const CptReport report = run_cpt_test(sample, cc);

    nlohmann::json j = to_json(report);
    j["config"] = config_echo(cfg);
    j["data"] = flags.data_path;
    if (!flags.out.empty()) write_json_file(flags.out, j);
    else std::cout << j.dump(2) << '\n';

    if (!flags.plot_data.empty()) {
        const ProcessPath path = beta_process(sample, cc);
        std::ofstream pf(flags.plot_data);
        if (!pf) throw std::runtime_error("cannot write '" + flags.plot_data + "'");
        path.write_csv(pf);
    }
    return report.reject ? kExitReject : kExitOk;
}

int cmd_quantiles(const CommonFlags& flags, const std::string& functional,
                  const std::string& levels_text, long reps, int resolution) {
    std::vector<double> levels;
    std::istringstream is(levels_text);
    std::string item;
    while (std::getline(is, item, ',')) {
        if (!item.empty()) levels.push_back(std::stod(item));
    }
    const QuantileTable table = functional_quantiles(
        functional_from_name(functional), levels, resolution, reps, flags.seed, flags.workers);
    const nlohmann::json j = to_json(table);
    if (!flags.out.empty()) write_json_file(flags.out, j);
    else std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int cmd_verify(const CommonFlags& flags, const std::string& sub) {
    const Config cfg = Config::load(flags.config_path);
    nlohmann::json j;
    std::string csv;
    if (sub == "moment") {
        MomentScalingConfig mc;
        const std::string gen = cfg.get_or<std::string>("verify.generator", "gaussian");
        if (gen == "zero") mc.generator = MomentScalingConfig::Generator::zero;
        else if (gen == "gaussian") mc.generator = MomentScalingConfig::Generator::gaussian;
        else if (gen == "mds1") mc.generator = MomentScalingConfig::Generator::mds1;
        else throw ConfigError("config: unknown moment generator '" + gen + "'");
        mc.scale = cfg.get_or<double>("verify.scale", 1.0);
        mc.q = cfg.get_or<int>("verify.Q", 2);
        mc.tau = cfg.get_or<double>("verify.tau", 1.0);
        if (cfg.has("verify.n_list")) mc.n_list = cfg.get_int_list("verify.n_list");
        mc.reps = cfg.get_or<long>("verify.reps", 5000L);
        mc.seed = master_seed(cfg, flags);
        mc.workers = flags.workers;
        const MomentScalingReport report = moment_scaling(mc);
        j = to_json(report, mc);
        std::ostringstream os;
        os << "n,m_hat,ratio\n";
        for (std::size_t i = 0; i < report.n_list.size(); ++i) {
            os << report.n_list[i] << ',' << report.m_hat[i] << ',' << report.ratios[i] << '\n';
        }
        csv = os.str();
    } else if (sub == "modulus") {
        ModulusConfig mc;
        mc.law = Law::from_name(cfg.get_or<std::string>("verify.law", "uniform01"));
        mc.q = cfg.get_or<int>("verify.Q", 4);
        mc.gamma = cfg.get_or<double>("verify.gamma", 2.0);
        if (cfg.has("verify.deltas")) mc.deltas = cfg.get_double_list("verify.deltas");
        if (cfg.has("verify.n_list")) mc.n_list = cfg.get_int_list("verify.n_list");
        if (cfg.has("verify.z_grid")) mc.z_grid = cfg.get_double_list("verify.z_grid");
        mc.reps = cfg.get_or<long>("verify.reps", 500L);
        mc.seed = master_seed(cfg, flags);
        mc.workers = flags.workers;
        const ModulusReport report = equicontinuity_modulus(mc);
        j = to_json(report);
        j["seed"] = mc.seed;
        std::ostringstream os;
        os << "n,delta,modulus\n";
        for (std::size_t ni = 0; ni < report.n_list.size(); ++ni) {
            for (std::size_t k = 0; k < report.deltas.size(); ++k) {
                os << report.n_list[ni] << ',' << report.deltas[k] << ',' << report.m(ni, k)
                   << '\n';
            }
        }
        csv = os.str();
    } else if (sub == "fidi") {
        FidiConfig fc;
        fc.n = cfg.get_or<long>("verify.n", 1000L);
        fc.reps = cfg.get_or<long>("verify.reps", 2000L);
        fc.sigma = cfg.get_or<double>("verify.sigma", 1.0);
        fc.z1 = cfg.get_double("verify.z1");
        fc.z2 = cfg.get_double("verify.z2");
        fc.seed = master_seed(cfg, flags);
        fc.workers = flags.workers;
        j = to_json(fidi_check(fc), fc);
    } else if (sub == "entropy") {
        EntropyBudget budget;
        budget.q = cfg.get_or<int>("verify.Q", 4);
        budget.gamma = cfg.get_or<double>("verify.gamma", 2.0);
        budget.bracket_exponent = cfg.get_or<double>("verify.bracket_exponent", 2.0);
        budget.mixing = mixing_from_config(cfg, "verify.");
        const long truncation = cfg.get_or<long>("verify.truncation", 100000L);
        j = nlohmann::json{{"schema_version", kSchemaVersion},
                           {"record", "entropy_check"},
                           {"A1", to_json(check_A1(budget, truncation))},
                           {"A2", to_json(check_A2_integral(budget))}};
        if (cfg.has("verify.epsilons")) {
            const Law law = Law::from_name(cfg.get_or<std::string>("verify.law", "uniform01"));
            nlohmann::json brackets = nlohmann::json::array();
            for (double eps : cfg.get_double_list("verify.epsilons")) {
                const BracketSet set = build_brackets(eps, law);
                double max_rho = 0.0;
                for (const auto& b : set.bounding) {
                    max_rho = std::max(max_rho, std::sqrt(b.mass));
                }
                brackets.push_back({{"epsilon", eps},
                                    {"N", set.approximating.size()},
                                    {"max_rho", max_rho}});
            }
            j["brackets"] = brackets;
        }
    } else {
        throw ConfigError("verify: unknown subcommand '" + sub + "'");
    }
    j["config"] = config_echo(cfg);
    if (!flags.out.empty()) write_json_file(flags.out, j);
    else std::cout << j.dump(2) << '\n';
    if (!flags.plot_data.empty() && !csv.empty()) {
        std::ofstream pf(flags.plot_data);
        if (!pf) throw std::runtime_error("cannot write '" + flags.plot_data + "'");
        pf << csv;
    }
    return kExitOk;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"sequential empirical process toolkit: threshold and changepoint "
                 "tests with simulated limit laws"};
    app.require_subcommand(1);

    CommonFlags flags;
    std::string verify_sub, functional = "ks-sup", levels = "0.9,0.95,0.99";
    long reps = 100000;
    int resolution = 1024;

    auto add_common = [&](CLI::App* cmd, bool needs_config, bool needs_data) {
        auto* copt = cmd->add_option("--config", flags.config_path, "config file (key = value or JSON)");
        if (needs_config) copt->required();
        if (needs_data) cmd->add_option("--data", flags.data_path, "input CSV")->required();
        cmd->add_option("--out", flags.out, "output path");
        cmd->add_option("--plot-data", flags.plot_data, "plot data CSV path");
        cmd->add_option("--workers", flags.workers, "Monte Carlo worker threads");
        cmd->add_option_function<std::uint64_t>(
            "--seed",
            [&flags](std::uint64_t s) {
                flags.seed = s;
                flags.seed_set = true;
            },
            "master seed (overrides config)");
    };

    auto* gen = app.add_subcommand("gen", "generate a data set from a config");
    add_common(gen, true, false);
    auto* setar = app.add_subcommand("setar-test", "threshold test on a univariate series");
    add_common(setar, true, true);
    auto* cpt = app.add_subcommand("cpt-test", "changepoint test on a regression sample");
    add_common(cpt, true, true);
    auto* verify = app.add_subcommand("verify", "condition checks and verification experiments");
    verify->add_option("subcommand", verify_sub, "moment | modulus | fidi | entropy")->required();
    add_common(verify, true, false);
    auto* quant = app.add_subcommand("quantiles", "limit functional quantile table");
    add_common(quant, false, false);
    quant->add_option("--functional", functional, "ks-sup | cvm-integral");
    quant->add_option("--levels", levels, "comma separated levels");
    quant->add_option("--reps", reps, "Monte Carlo replications");
    quant->add_option("--resolution", resolution, "bridge grid resolution");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            std::cout << app.help();
            return kExitOk;
        }
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }

    try {
        if (gen->parsed()) return cmd_gen(flags);
        if (setar->parsed()) return cmd_setar_test(flags);
        if (cpt->parsed()) return cmd_cpt_test(flags);
        if (verify->parsed()) return cmd_verify(flags, verify_sub);
        if (quant->parsed()) {
            if (!flags.seed_set && !flags.config_path.empty()) {
                flags.seed = Config::load(flags.config_path).get_seed("seed");
            } else if (!flags.seed_set) {
                throw ConfigError("quantiles: --seed (or a config with a seed field) is required");
            }
            return cmd_quantiles(flags, functional, levels, reps, resolution);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}

} // namespace seqemp
