#include "seqemp/report.hpp"

#include <cmath>
#include <fstream>

namespace seqemp {

namespace {

nlohmann::json stat_json(const StatisticResult& s) {
    return {{"value", s.value},
            {"critical_value", s.critical},
            {"p_value", s.p_value},
            {"reject", s.reject}};
}

// JSON has no representation for infinity; divergent checks say so explicitly
nlohmann::json finite_or_tag(double v) {
    if (std::isinf(v)) return "infinite";
    return v;
}

} // namespace

nlohmann::json to_json(const QuantileTable& table) {
    return {{"schema_version", kSchemaVersion},
            {"record", "quantile_table"},
            {"functional", functional_name(table.tag)},
            {"levels", table.levels},
            {"quantiles", table.quantiles},
            {"reps", table.reps},
            {"resolution", table.resolution},
            {"seed", table.seed}};
}

nlohmann::json to_json(const SetarReport& report) {
    nlohmann::json j{{"schema_version", kSchemaVersion},
                     {"record", "setar_test"},
                     {"n", report.n},
                     {"sigma2_hat", report.sigma2},
                     {"level", report.level},
                     {"argmax_z", report.argmax_z},
                     {"pivotal_weighting", report.pivotal_weighting},
                     {"centering", "empirical"},
                     {"reject", report.any_rejection()},
                     {"seed", report.seed}};
    if (report.ks) {
        j["ks"] = stat_json(*report.ks);
        j["ks"]["quantile_source"] = report.ks_quantile_source;
    }
    if (report.cvm) j["cvm"] = stat_json(*report.cvm);
    return j;
}

nlohmann::json to_json(const CptReport& report) {
    return {{"schema_version", kSchemaVersion},
            {"record", "cpt_test"},
            {"n", report.n},
            {"d", report.d},
            {"statistic", report.statistic},
            {"critical_value", report.critical},
            {"critical_value_kind", report.critical_value_kind},
            {"p_value", report.p_value},
            {"reject", report.reject},
            {"level", report.level},
            {"argmax_s", report.argmax_s},
            {"argmax_z", report.argmax_z},
            {"cvm_secondary_diagnostic", report.cvm_secondary},
            {"s_grid_size", report.s_grid_size},
            {"z_grid_size", report.z_grid_size},
            {"gamma_reps", report.gamma_reps},
            {"time_jitter", report.time_jitter},
            {"space_jitter", report.space_jitter},
            {"seed", report.seed}};
}

nlohmann::json to_json(const A1Report& report) {
    return {{"schema_version", kSchemaVersion},
            {"condition", "A1"},
            {"pass", report.pass},
            {"value", report.partial_sum},
            {"diagnostics",
             {{"tail_bound", finite_or_tag(report.tail_bound)},
              {"truncation", report.truncation},
              {"detail", report.detail}}}};
}

nlohmann::json to_json(const A2Report& report) {
    return {{"schema_version", kSchemaVersion},
            {"condition", "A2"},
            {"pass", report.pass},
            {"value", finite_or_tag(report.closed_form_value)},
            {"diagnostics",
             {{"exponent_sum", report.exponent_sum},
              {"quadrature_value", finite_or_tag(report.quadrature_value)},
              {"relative_error", report.relative_error}}}};
}

nlohmann::json to_json(const A3Report& report) {
    return {{"schema_version", kSchemaVersion},
            {"condition", "A3"},
            {"pass", true},
            {"value", report.envelope_moment},
            {"diagnostics",
             {{"sup_member_moment", report.sup_member_moment},
              {"sup_at", report.sup_at},
              {"heavy_tail_warning", report.heavy_tail_warning},
              {"top_observation_share", report.top_observation_share}}}};
}

nlohmann::json to_json(const MomentScalingReport& report, const MomentScalingConfig& config) {
    return {{"schema_version", kSchemaVersion},
            {"record", "moment_scaling"},
            {"generator", config.generator_name()},
            {"Q", config.q},
            {"tau", config.tau},
            {"scale", config.scale},
            {"reps", config.reps},
            {"n_list", report.n_list},
            {"m_hat", report.m_hat},
            {"ratios", report.ratios},
            {"log_log_slope", report.slope},
            {"seed", config.seed}};
}

nlohmann::json to_json(const ModulusReport& report) {
    nlohmann::json matrix = nlohmann::json::array();
    for (std::size_t ni = 0; ni < report.n_list.size(); ++ni) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < report.deltas.size(); ++k) row.push_back(report.m(ni, k));
        matrix.push_back(row);
    }
    return {{"schema_version", kSchemaVersion},
            {"record", "equicontinuity_modulus"},
            {"deltas", report.deltas},
            {"n_list", report.n_list},
            {"modulus", matrix},
            {"empty_pair_sets", report.empty_pairs},
            {"pair_counts", report.pair_counts},
            {"grid_size", report.grid_size},
            {"grid_min_d", report.grid_min_d},
            {"grid_max_d", report.grid_max_d}};
}

nlohmann::json to_json(const FidiReport& report, const FidiConfig& config) {
    return {{"schema_version", kSchemaVersion},
            {"record", "fidi_check"},
            {"n", config.n},
            {"reps", config.reps},
            {"z1", config.z1},
            {"z2", config.z2},
            {"sigma", config.sigma},
            {"empirical", {report.empirical[0], report.empirical[1], report.empirical[2]}},
            {"target", {report.target[0], report.target[1], report.target[2]}},
            {"mc_se", {report.mc_se[0], report.mc_se[1], report.mc_se[2]}},
            {"max_abs_deviation", report.max_abs_deviation},
            {"max_dev_over_se", report.max_dev_over_se},
            {"seed", config.seed}};
}

nlohmann::json config_echo(const Config& config) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : config.entries()) j[key] = value;
    return j;
}

void write_json_file(const std::string& path, const nlohmann::json& j) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << j.dump(2) << '\n';
}

} // namespace seqemp
