// chsh_lab: finite-probability-space toolkit for gated two-party experiments.
//
// Subcommands: qm, unify, simulate, two-valued, realizable. Reports are JSON
// on stdout; trial logs are CSV. Exit codes: 0 analysis done (whatever the
// verdict), 2 invalid input, 1 internal invariant violation.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "chsh/json_io.hpp"

namespace {

using chsh::json;

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) chsh::fail(chsh::ErrorCode::ParseError, "cannot open '" + path + "'");
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        chsh::fail(chsh::ErrorCode::ParseError, std::string("malformed JSON in '") + path + "': " + e.what());
    }
    return j;
}

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

unsigned thread_cap_from_env() {
    const char* env = std::getenv("CHSH_LAB_THREADS");
    if (!env || !*env) return 0;
    long v = std::strtol(env, nullptr, 10);
    return v < 1 ? 1u : static_cast<unsigned>(v);
}

struct QmArgs {
    double t1 = 0, t2 = 0, u1 = 0, u2 = 0;
    std::string convention = "full";
};

int cmd_qm(const QmArgs& args) {
    chsh::AngleConfig angles;
    angles.theta1 = args.t1;
    angles.theta2 = args.t2;
    angles.theta1p = args.u1;
    angles.theta2p = args.u2;
    angles.convention = chsh::angle_convention_from_string(args.convention);

    chsh::CondTableFamily family = chsh::qm_family(angles);
    json out = chsh::family_to_json(family);
    json corr = json::object();
    const char* keys[4] = {"11", "12", "21", "22"};
    for (int g = 0; g < 4; ++g) corr[keys[g]] = chsh::table_correlation(family.tables[g]).as_double();
    out["correlations"] = corr;
    out["convention"] = args.convention;
    emit(out);
    return 0;
}

int cmd_unify(const std::string& path) {
    chsh::CondTableFamily family = chsh::family_from_json(load_json_file(path));
    chsh::UnifyingSpace us = chsh::build_unifying_space(family);

    json out;
    out["space"] = chsh::unifying_space_to_json(us);
    out["pi_identity"] = chsh::pi_report_to_json(chsh::verify_pi_identity(us));
    out["conditional_chsh"] = chsh::chsh_report_to_json(chsh::conditional_chsh(us));
    out["unconditional_chsh"] =
        chsh::chsh_report_to_json(chsh::chsh_value(us.space, us.a1, us.a2, us.b1, us.b2));
    emit(out);
    return 0;
}

struct SimArgs {
    std::string tables_path;
    std::uint64_t trials = 0;
    std::uint64_t seed = 0;
    std::uint32_t batch_size = 1u << 16;
    bool balanced = false;
    std::string csv_path;
};

int cmd_simulate(const SimArgs& args) {
    chsh::McConfig config;
    config.family = chsh::family_from_json(load_json_file(args.tables_path));
    config.trials = args.trials;
    config.seed = args.seed;
    config.batch_size = args.batch_size;
    config.schedule = args.balanced ? chsh::GateSchedule::Balanced : chsh::GateSchedule::Iid;
    config.max_threads = thread_cap_from_env();

    chsh::TrialLog log = chsh::run_experiment(config);
    if (!args.csv_path.empty()) {
        std::ofstream csv(args.csv_path, std::ios::binary);
        if (!csv) chsh::fail(chsh::ErrorCode::ParseError, "cannot write '" + args.csv_path + "'");
        chsh::write_csv(log, csv);
    }

    chsh::McEstimate est = chsh::estimate(log);
    json out;
    out["estimates"] = chsh::estimate_to_json(est);
    bool all_cells = true;
    for (const auto& p : est.pairs) all_cells = all_cells && p.cond.has_value();
    if (all_cells) out["chsh"] = chsh::mc_chsh_to_json(chsh::chsh_from_estimates(est));
    out["seed"] = args.seed;
    out["schedule"] = args.balanced ? "balanced" : "iid";
    if (!args.csv_path.empty()) out["csv"] = args.csv_path;
    emit(out);
    return 0;
}

struct TwoValuedArgs {
    std::string x, y, target;
};

int cmd_two_valued(const TwoValuedArgs& args) {
    chsh::TwoValuedParams params{chsh::Scalar(0), chsh::Scalar(0)};
    if (!args.target.empty()) {
        params = chsh::solve_xy(chsh::parse_exact_or_fail(args.target));
    } else {
        params = chsh::TwoValuedParams::make(chsh::parse_exact_or_fail(args.x),
                                             chsh::parse_exact_or_fail(args.y));
    }
    chsh::TwoValuedSpace tvs = chsh::build_two_valued_space(params);
    emit(chsh::two_valued_report_to_json(tvs));
    return 0;
}

int cmd_realizable(const std::string& path) {
    chsh::CondTableFamily family = chsh::family_from_json(load_json_file(path));
    chsh::RemarkGapReport report = chsh::remark_gap(family);
    json out = chsh::feasibility_to_json(report.feasibility);
    out["gap_present"] = report.gap_present;
    out["interpretation"] = report.interpretation;
    emit(out);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite probability spaces, gated Bell-type experiments, and joint realizability"};
    app.require_subcommand(1);

    QmArgs qm_args;
    CLI::App* qm = app.add_subcommand("qm", "emit the outcome-table family for four analyzer angles");
    qm->add_option("--t1", qm_args.t1, "first A-side angle, radians")->required();
    qm->add_option("--t2", qm_args.t2, "second A-side angle, radians")->required();
    qm->add_option("--u1", qm_args.u1, "first B-side angle, radians")->required();
    qm->add_option("--u2", qm_args.u2, "second B-side angle, radians")->required();
    qm->add_option("--convention", qm_args.convention, "'full' (default) or 'half' angle dependence")
        ->check(CLI::IsMember({"full", "half"}));

    std::string unify_path;
    CLI::App* unify = app.add_subcommand("unify", "build the 16-atom unifying space from a family JSON");
    unify->add_option("tables", unify_path, "family JSON file")->required();

    SimArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "run the gated experiment and estimate correlations");
    simulate->add_option("tables", sim_args.tables_path, "family JSON file")->required();
    simulate->add_option("--trials", sim_args.trials, "number of trials")->required();
    simulate->add_option("--seed", sim_args.seed, "RNG seed (default 0)");
    simulate->add_option("--batch-size", sim_args.batch_size, "trials per RNG substream (default 65536)");
    simulate->add_flag("--balanced", sim_args.balanced,
                       "shuffle a schedule with each pair exactly trials/4 times instead of i.i.d. gates");
    simulate->add_option("--csv", sim_args.csv_path, "write the trial log as CSV to this path");

    TwoValuedArgs tv_args;
    CLI::App* two_valued = app.add_subcommand("two-valued", "the sixteen-outcome +-1 construction");
    auto* opt_x = two_valued->add_option("--x", tv_args.x, "weight of the first eight rows");
    auto* opt_y = two_valued->add_option("--y", tv_args.y, "weight of the last eight rows");
    auto* opt_t = two_valued->add_option("--target-corr", tv_args.target,
                                         "solve for (x,y) hitting this conditional correlation");
    opt_x->needs(opt_y);
    opt_y->needs(opt_x);
    opt_t->excludes(opt_x)->excludes(opt_y);

    std::string realizable_path;
    CLI::App* realizable =
        app.add_subcommand("realizable", "decide whether one joint distribution reproduces all four tables");
    realizable->add_option("tables", realizable_path, "family JSON file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    }

    try {
        if (app.got_subcommand(qm)) return cmd_qm(qm_args);
        if (app.got_subcommand(unify)) return cmd_unify(unify_path);
        if (app.got_subcommand(simulate)) return cmd_simulate(sim_args);
        if (app.got_subcommand(two_valued)) {
            if (tv_args.target.empty() && (tv_args.x.empty() || tv_args.y.empty())) {
                std::cerr << "two-valued needs either --x/--y or --target-corr\n";
                return 2;
            }
            return cmd_two_valued(tv_args);
        }
        if (app.got_subcommand(realizable)) return cmd_realizable(realizable_path);
    } catch (const chsh::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return e.is_validation() ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
