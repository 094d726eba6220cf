#include "seclab/harness.hpp"

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <sstream>
#include <thread>

#include "seclab/corpus.hpp"

namespace seclab {

using nlohmann::json;

AttackModel parse_atk(const std::string& s) {
    if (s == "cpa") return AttackModel::Cpa;
    if (s == "cca1") return AttackModel::Cca1;
    if (s == "cca2") return AttackModel::Cca2;
    throw ConfigError("unknown attack model \"" + s + "\"");
}

GameKind parse_game(const std::string& s) {
    if (s == "ind") return GameKind::Ind;
    if (s == "css") return GameKind::Css;
    throw ConfigError("unknown game \"" + s + "\"");
}

TieBreakMode parse_tie_break(const std::string& s) {
    if (s == "coinflip") return TieBreakMode::CoinFlip;
    if (s == "last_if") return TieBreakMode::LastIfWins;
    throw ConfigError("unknown tie break mode \"" + s + "\"");
}

void RunConfig::validate(bool reduction) const {
    parse_atk(atk);
    if (k < 1) throw ConfigError("k must be >= 1");
    if (exact) {
        if (trials || epsilon || delta)
            throw ConfigError("exact mode takes no trials/epsilon/delta");
    } else {
        bool has_n = trials.has_value();
        bool has_eps = epsilon.has_value() && delta.has_value();
        if (epsilon.has_value() != delta.has_value())
            throw ConfigError("epsilon and delta go together");
        if (has_n == has_eps)
            throw ConfigError("supply exactly one of trials or (epsilon, delta)");
    }
    if (!corpus::is_scheme(scheme)) throw ConfigError("unknown scheme \"" + scheme + "\"");

    if (reduction) {
        if (direction == "css_from_ind") {
            if (!corpus::is_ind_adversary(adversary))
                throw ConfigError("css_from_ind needs an IND adversary, got \"" + adversary + "\"");
        } else if (direction == "ind_from_css") {
            if (!corpus::is_css_adversary(adversary))
                throw ConfigError("ind_from_css needs a CSS adversary, got \"" + adversary + "\"");
        } else {
            throw ConfigError("unknown direction \"" + direction + "\"");
        }
        parse_tie_break(tie_break);
        return;
    }

    GameKind g = parse_game(game);
    if (g == GameKind::Ind && !corpus::is_ind_adversary(adversary))
        throw ConfigError("IND game needs an IND adversary, got \"" + adversary + "\"");
    if (g == GameKind::Css) {
        if (!corpus::is_css_adversary(adversary))
            throw ConfigError("CSS game needs a CSS adversary, got \"" + adversary + "\"");
        if (!corpus::is_sampler(sampler)) throw ConfigError("unknown sampler \"" + sampler + "\"");
    }
}

uint64_t RunConfig::trials_per_arm() const {
    if (trials) return *trials;
    return required_trials(*epsilon, *delta);
}

json RunConfig::to_json() const {
    json j;
    j["game"] = game;
    j["atk"] = atk;
    j["scheme"] = corpus::resolve_alias(scheme);
    j["adversary"] = corpus::resolve_alias(adversary);
    if (game == "css" || direction == "ind_from_css")
        j["sampler"] = corpus::resolve_alias(sampler);
    j["k"] = k;
    j["mode"] = exact ? "exact" : "mc";
    if (trials) j["trials"] = *trials;
    if (epsilon) j["epsilon"] = *epsilon;
    if (delta) j["delta"] = *delta;
    if (!exact) j["seed"] = seed;
    if (!direction.empty()) {
        j["direction"] = direction;
        j["tie_break"] = tie_break;
    }
    return j;
}

RunConfig RunConfig::from_json(const json& j) {
    RunConfig cfg;
    try {
        cfg.game = j.value("game", "ind");
        cfg.atk = j.value("atk", "cpa");
        cfg.scheme = j.at("scheme").get<std::string>();
        cfg.adversary = j.at("adversary").get<std::string>();
        cfg.sampler = j.value("sampler", "uniform");
        cfg.k = j.value("k", 4);
        cfg.exact = j.value("mode", "mc") == "exact";
        if (j.contains("trials")) cfg.trials = j.at("trials").get<uint64_t>();
        if (j.contains("epsilon")) cfg.epsilon = j.at("epsilon").get<double>();
        if (j.contains("delta")) cfg.delta = j.at("delta").get<double>();
        cfg.seed = j.value("seed", uint64_t{1});
        cfg.direction = j.value("direction", "");
        cfg.tie_break = j.value("tie_break", "coinflip");
    } catch (const json::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }
    return cfg;
}

GameSpec spec_from_config(const RunConfig& cfg) {
    return corpus::make_spec(cfg.scheme, cfg.adversary, parse_atk(cfg.atk),
                             SecurityParameter(cfg.k), cfg.sampler);
}

namespace {

std::string hex64(uint64_t v) {
    std::ostringstream os;
    os << std::hex << v;
    return os.str();
}

json exact_advantage_json(const ExactAdvantage& adv) {
    json j;
    j["kind"] = "exact";
    j["p1"] = adv.p1().to_string();
    j["p0"] = adv.p0().to_string();
    j["advantage"] = adv.advantage.to_string();
    j["count1"] = adv.arm1.ones;
    j["count0"] = adv.arm0.ones;
    j["tapes_per_arm"] = adv.arm1.tapes;
    j["transcript_digests"] = {{"b1", hex64(adv.arm1.transcript_digest)},
                               {"b0", hex64(adv.arm0.transcript_digest)}};
    return j;
}

json estimate_json(const AdvantageEstimate& est) {
    json j;
    j["kind"] = "estimate";
    j["n"] = est.n;
    j["count1"] = est.count1;
    j["count0"] = est.count0;
    j["p1_hat"] = est.p1_hat;
    j["p0_hat"] = est.p0_hat;
    j["adv_hat"] = est.adv_hat;
    j["epsilon"] = est.epsilon;
    j["delta"] = est.delta;
    j["interval"] = json::array({est.interval_lo, est.interval_hi});
    j["transcript_digests"] = {{"b1", hex64(est.digest1)}, {"b0", hex64(est.digest0)}};
    return j;
}

json finish_report(const RunConfig& cfg, json result,
                   std::chrono::steady_clock::time_point started) {
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    json report;
    report["schema_version"] = kSchemaVersion;
    report["config"] = cfg.to_json();
    report["result"] = std::move(result);
    report["meta"]["tool"] = kToolVersion;
    report["meta"]["wall_clock_ms"] = elapsed;
    return report;
}

json advantage_result(const RunConfig& cfg, const GameSpec& spec, GameKind game) {
    if (cfg.exact) return exact_advantage_json(exact_advantage(spec, game));
    AdvantageEstimate est =
        estimate_advantage(spec, game, cfg.trials_per_arm(), cfg.delta.value_or(0.01), cfg.seed);
    return estimate_json(est);
}

} // namespace

json run_single(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    cfg.validate();
    GameSpec spec = spec_from_config(cfg);
    json result = advantage_result(cfg, spec, parse_game(cfg.game));
    return finish_report(cfg, std::move(result), started);
}

json run_reduction_check(const RunConfig& cfg) {
    auto started = std::chrono::steady_clock::now();
    cfg.validate(/*reduction=*/true);

    const SecurityParameter k(cfg.k);
    const AttackModel atk = parse_atk(cfg.atk);
    Scheme scheme = corpus::build_scheme(cfg.scheme, k);
    ReductionDirection direction = cfg.direction == "css_from_ind"
                                       ? ReductionDirection::CssFromInd
                                       : ReductionDirection::IndFromCss;

    GameSpec original_spec{scheme, {}, atk, std::nullopt, k};
    GameSpec constructed_spec{scheme, {}, atk, std::nullopt, k};
    GameKind original_game, constructed_game;

    if (direction == ReductionDirection::CssFromInd) {
        IndAdversary inner = corpus::build_ind_adversary(cfg.adversary, k);
        original_spec.adversary = inner;
        original_game = GameKind::Ind;
        constructed_spec.adversary = css_from_ind(inner);
        constructed_spec.sampler = corpus::build_sampler("uniform");
        constructed_game = GameKind::Css;
    } else {
        CssAdversary inner = corpus::build_css_adversary(cfg.adversary, k);
        original_spec.adversary = inner;
        original_spec.sampler = corpus::build_sampler(cfg.sampler);
        original_game = GameKind::Css;
        constructed_spec.adversary = ind_from_css(inner, parse_tie_break(cfg.tie_break));
        constructed_game = GameKind::Ind;
    }

    AdvantageSide original{scheme.id, atk, {}};
    AdvantageSide constructed{scheme.id, atk, {}};
    json original_json, constructed_json;
    if (cfg.exact) {
        original.value = exact_advantage(original_spec, original_game);
        constructed.value = exact_advantage(constructed_spec, constructed_game);
        original_json = exact_advantage_json(original.exact());
        constructed_json = exact_advantage_json(constructed.exact());
    } else {
        uint64_t n = cfg.trials_per_arm();
        double delta = cfg.delta.value_or(0.01);
        original.value = estimate_advantage(original_spec, original_game, n, delta,
                                            mix64(cfg.seed ^ 0x0A11CE5Bu));
        constructed.value = estimate_advantage(constructed_spec, constructed_game, n, delta,
                                               mix64(cfg.seed ^ 0xB0B5EEDFu));
        original_json = estimate_json(original.estimate());
        constructed_json = estimate_json(constructed.estimate());
    }

    Rational scale = identity_scale(direction);
    ResidualReport residual = check_reduction_identity(original, constructed, scale);

    json result;
    result["kind"] = "reduction";
    result["direction"] = to_string(direction);
    if (direction == ReductionDirection::IndFromCss) result["tie_break"] = cfg.tie_break;
    result["original"] = std::move(original_json);
    result["constructed"] = std::move(constructed_json);
    result["identity_scale"] = scale.to_string();
    if (residual.exact) {
        result["expected"] = residual.expected.to_string();
        result["residual"] = residual.residual.to_string();
    } else {
        result["expected"] = residual.expected_mid;
        result["residual"] = residual.residual_mid;
        result["tolerance"] = residual.tolerance;
    }
    result["pass"] = residual.pass;
    return finish_report(cfg, std::move(result), started);
}

json run_sweep(const SweepConfig& sweep_cfg) {
    auto started = std::chrono::steady_clock::now();
    RunConfig base = sweep_cfg.base;
    if (base.exact) throw ConfigError("sweep runs in Monte Carlo mode");
    base.validate();
    if (sweep_cfg.k_list.empty()) throw ConfigError("sweep needs a k list");

    GameKind game = parse_game(base.game);
    auto family = [&base](int k) {
        RunConfig cfg = base;
        cfg.k = k;
        return spec_from_config(cfg);
    };
    NegligibilitySweep sweep =
        negligibility_sweep(family, game, sweep_cfg.k_list, base.trials_per_arm(),
                            base.delta.value_or(0.01), sweep_cfg.c, base.seed);

    json result;
    result["kind"] = "sweep";
    result["c"] = sweep.c;
    result["points"] = json::array();
    for (const auto& p : sweep.points) {
        json row = estimate_json(p.estimate);
        row["k"] = p.k;
        row["threshold"] = p.threshold;
        row["below_threshold"] = p.below_threshold;
        result["points"].push_back(std::move(row));
    }

    json report = finish_report(base, std::move(result), started);
    report["config"]["k_list"] = sweep_cfg.k_list;
    report["config"]["c"] = sweep_cfg.c;
    return report;
}

MatrixOutcome run_matrix(const json& matrix_config) {
    auto started = std::chrono::steady_clock::now();
    if (!matrix_config.is_object() || !matrix_config.contains("cells") ||
        !matrix_config.at("cells").is_array())
        throw ConfigError("matrix config needs a \"cells\" array");

    const auto& cells = matrix_config.at("cells");
    std::vector<json> reports(cells.size());
    std::vector<int> failed(cells.size(), 0);

    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("SECLAB_WORKERS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) workers = static_cast<unsigned>(v);
    }
    workers = std::max(1u, std::min<unsigned>(workers, cells.size() ? cells.size() : 1));

    std::atomic<size_t> next{0};
    auto work = [&]() {
        for (size_t i = next.fetch_add(1); i < cells.size(); i = next.fetch_add(1)) {
            try {
                RunConfig cfg = RunConfig::from_json(cells.at(i));
                reports[i] = cfg.direction.empty() ? run_single(cfg) : run_reduction_check(cfg);
            } catch (const std::exception& e) {
                reports[i] = json{{"error", e.what()}, {"config", cells.at(i)}};
                failed[i] = 1;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();

    json summary = json::array();
    int n_failed = 0;
    for (size_t i = 0; i < cells.size(); ++i) {
        json row;
        row["cell"] = i;
        if (failed[i]) {
            ++n_failed;
            row["status"] = "error";
            row["error"] = reports[i].at("error");
        } else {
            const json& cfg = reports[i].at("config");
            const json& res = reports[i].at("result");
            row["status"] = "ok";
            row["game"] = cfg.value("game", "");
            row["atk"] = cfg.value("atk", "");
            row["scheme"] = cfg.value("scheme", "");
            row["adversary"] = cfg.value("adversary", "");
            row["k"] = cfg.value("k", 0);
            if (res.contains("advantage")) row["advantage"] = res.at("advantage");
            else if (res.contains("adv_hat")) row["advantage"] = res.at("adv_hat");
            else if (res.contains("pass")) row["advantage"] = res.at("pass") ? "pass" : "fail";
        }
        summary.push_back(std::move(row));
    }

    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                       std::chrono::steady_clock::now() - started)
                       .count();
    json report;
    report["schema_version"] = kSchemaVersion;
    report["config"] = matrix_config;
    report["cells"] = reports;
    report["summary"] = std::move(summary);
    report["meta"]["tool"] = kToolVersion;
    report["meta"]["wall_clock_ms"] = elapsed;
    return MatrixOutcome{std::move(report), n_failed == 0 ? 0 : 1};
}

std::string report_body(const json& report) {
    json body = report;
    if (body.contains("meta") && body["meta"].contains("wall_clock_ms"))
        body["meta"].erase("wall_clock_ms");
    if (body.contains("cells"))
        for (auto& cell : body["cells"])
            if (cell.contains("meta") && cell["meta"].contains("wall_clock_ms"))
                cell["meta"].erase("wall_clock_ms");
    return body.dump(2);
}

json rerun_report(const json& report) {
    RunConfig cfg = RunConfig::from_json(report.at("config"));
    return cfg.direction.empty() ? run_single(cfg) : run_reduction_check(cfg);
}

} // namespace seclab
