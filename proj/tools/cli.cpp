/*
   Copyright 2026 The cogrelay Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "cogrelay/cogrelay.hpp"

namespace cogrelay::cli {

namespace {

using nlohmann::json;

double parse_double(std::string_view text, const std::string& what)
{
    double v = 0.0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ConfigError(what + ": cannot parse number '" + std::string(text) + "'");
    }
    return v;
}

std::vector<std::string> split(std::string_view text, char sep)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.emplace_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

Point parse_point(const json& j, const char* key)
{
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw ConfigError(std::string(key) + " must be an array of two numbers");
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

double number_field(const json& j, const char* key)
{
    if (!j.is_number()) {
        throw ConfigError(std::string(key) + " must be a number");
    }
    return j.get<double>();
}

int integer_field(const json& j, const char* key)
{
    if (!j.is_number_integer()) {
        throw ConfigError(std::string(key) + " must be an integer");
    }
    return j.get<int>();
}

}  // namespace

Config parse_config(const std::string& json_text)
{
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object");
    }
    static const std::set<std::string> known{
        "hop_count",   "pu_coord",        "source_coord", "dest_coord",       "relay_x_positions",
        "path_loss_exponent", "ip_over_n0_db", "ip_over_n0", "gamma_th_db", "gamma_th",
        "qam_order",   "lambda_overrides", "profiles"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.contains(key)) {
            throw ConfigError("unknown config key '" + key + "'");
        }
    }
    if (doc.contains("ip_over_n0_db") && doc.contains("ip_over_n0")) {
        throw ConfigError("give only one of ip_over_n0_db and ip_over_n0");
    }
    if (doc.contains("gamma_th_db") && doc.contains("gamma_th")) {
        throw ConfigError("give only one of gamma_th_db and gamma_th");
    }

    Config cfg;
    Scenario& s = cfg.scenario;
    if (doc.contains("hop_count")) {
        s.hop_count = integer_field(doc["hop_count"], "hop_count");
    }
    if (doc.contains("pu_coord")) {
        s.primary_receiver = parse_point(doc["pu_coord"], "pu_coord");
    }
    if (doc.contains("source_coord")) {
        s.source = parse_point(doc["source_coord"], "source_coord");
    }
    if (doc.contains("dest_coord")) {
        s.destination = parse_point(doc["dest_coord"], "dest_coord");
    }
    if (doc.contains("relay_x_positions")) {
        const auto& arr = doc["relay_x_positions"];
        if (!arr.is_array()) {
            throw ConfigError("relay_x_positions must be an array");
        }
        for (const auto& v : arr) {
            s.relay_positions.push_back(number_field(v, "relay_x_positions"));
        }
    }
    if (doc.contains("path_loss_exponent")) {
        s.path_loss_exponent = number_field(doc["path_loss_exponent"], "path_loss_exponent");
    }
    if (doc.contains("ip_over_n0_db")) {
        s.ip_over_n0 = db_to_linear(number_field(doc["ip_over_n0_db"], "ip_over_n0_db"));
    }
    if (doc.contains("ip_over_n0")) {
        s.ip_over_n0 = number_field(doc["ip_over_n0"], "ip_over_n0");
    }
    if (doc.contains("gamma_th_db")) {
        s.gamma_th = db_to_linear(number_field(doc["gamma_th_db"], "gamma_th_db"));
    }
    if (doc.contains("gamma_th")) {
        s.gamma_th = number_field(doc["gamma_th"], "gamma_th");
    }
    if (doc.contains("qam_order")) {
        s.qam_order = integer_field(doc["qam_order"], "qam_order");
    }
    if (doc.contains("lambda_overrides")) {
        const auto& arr = doc["lambda_overrides"];
        if (!arr.is_array()) {
            throw ConfigError("lambda_overrides must be an array");
        }
        std::vector<LinkPowers> lp;
        for (const auto& v : arr) {
            if (!v.is_object() || !v.contains("lambda_d") || !v.contains("lambda_i") || v.size() != 2) {
                throw ConfigError("lambda_overrides entries must be {\"lambda_d\": x, \"lambda_i\": y}");
            }
            lp.push_back({number_field(v["lambda_d"], "lambda_d"), number_field(v["lambda_i"], "lambda_i")});
        }
        s.lambda_overrides = std::move(lp);
    }
    if (doc.contains("profiles")) {
        const auto& arr = doc["profiles"];
        if (!arr.is_array()) {
            throw ConfigError("profiles must be an array of strings");
        }
        cfg.profiles.clear();
        for (const auto& v : arr) {
            if (!v.is_string()) {
                throw ConfigError("profiles must be an array of strings");
            }
            cfg.profiles.push_back(v.get<std::string>());
        }
    }
    s.validate();
    return cfg;
}

Config load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw ConfigError("cannot open config '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

namespace {

const std::set<std::string> kSweepVariables{"ip_over_n0_db", "hop_count", "eta", "pu_x", "pu_y"};
constexpr std::size_t kMaxSweepPoints = 100000;

}  // namespace

Sweep parse_sweep(const std::string& spec)
{
    const auto eq = spec.find('=');
    if (eq == std::string::npos) {
        throw ConfigError("sweep must look like VAR=START:STOP:STEP or VAR=v1,v2,...");
    }
    Sweep sw;
    sw.variable = spec.substr(0, eq);
    if (!kSweepVariables.contains(sw.variable)) {
        throw ConfigError("unknown sweep variable '" + sw.variable + "'");
    }
    const std::string body = spec.substr(eq + 1);
    if (body.find(':') != std::string::npos) {
        const auto parts = split(body, ':');
        if (parts.size() != 3) {
            throw ConfigError("range sweep needs START:STOP:STEP");
        }
        const double start = parse_double(parts[0], "sweep");
        const double stop = parse_double(parts[1], "sweep");
        const double step = parse_double(parts[2], "sweep");
        if (!(step > 0.0) || !(stop >= start) || !std::isfinite(start) || !std::isfinite(stop)) {
            throw ConfigError("range sweep needs STEP > 0 and STOP >= START");
        }
        const double span = (stop - start) / step;
        if (span >= static_cast<double>(kMaxSweepPoints)) {
            throw ConfigError("sweep has too many points");
        }
        const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
        for (std::size_t i = 0; i < count; ++i) {
            sw.values.push_back(start + static_cast<double>(i) * step);
        }
    } else {
        for (const auto& p : split(body, ',')) {
            sw.values.push_back(parse_double(p, "sweep"));
        }
    }
    return sw;
}

Scenario apply_sweep(const Scenario& base, const std::string& variable, double value)
{
    Scenario s = base;
    if (s.lambda_overrides && variable != "ip_over_n0_db") {
        throw ConfigError("cannot sweep " + variable + " with lambda_overrides");
    }
    if (variable == "ip_over_n0_db") {
        s.ip_over_n0 = db_to_linear(value);
    } else if (variable == "hop_count") {
        if (value != std::round(value) || value < 1.0 || value > 1000.0) {
            throw ConfigError("hop_count sweep values must be positive integers");
        }
        s.hop_count = static_cast<int>(value);
        s.relay_positions.clear();
    } else if (variable == "eta") {
        s.path_loss_exponent = value;
    } else if (variable == "pu_x") {
        s.primary_receiver.x = value;
    } else if (variable == "pu_y") {
        s.primary_receiver.y = value;
    } else {
        throw ConfigError("unknown sweep variable '" + variable + "'");
    }
    s.validate();
    return s;
}

std::string format_number(double v)
{
    if (std::isnan(v)) {
        return "nan";
    }
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<double> profile_hop_lengths(const std::string& profile, const Scenario& s)
{
    const int k = s.hop_count;
    if (s.lambda_overrides) {
        throw ConfigError("relay profiles need geometry, not lambda_overrides");
    }
    if (profile == "uniform") {
        return std::vector<double>(k, 1.0 / k);
    }
    if (profile == "optimized") {
        return solve_equal_ratio(k, s.primary_receiver).d_data;
    }
    if (profile.starts_with("random:")) {
        const std::string seed_text = profile.substr(7);
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(seed_text.data(), seed_text.data() + seed_text.size(), seed);
        if (ec != std::errc{} || ptr != seed_text.data() + seed_text.size() || seed_text.empty()) {
            throw ConfigError("random profile needs an unsigned seed: '" + profile + "'");
        }
        // K-1 sorted uniform relay abscissae
        Rng rng(seed);
        std::vector<double> xs(k - 1);
        for (auto& x : xs) {
            x = rng.uniform_open0();
        }
        std::sort(xs.begin(), xs.end());
        std::vector<double> d(k);
        double prev = 0.0;
        for (int i = 0; i + 1 < k; ++i) {
            d[i] = xs[i] - prev;
            prev = xs[i];
        }
        d[k - 1] = 1.0 - prev;
        return d;
    }
    if (profile.starts_with("explicit:")) {
        std::vector<double> d;
        for (const auto& p : split(std::string_view(profile).substr(9), '/')) {
            d.push_back(parse_double(p, "explicit profile"));
        }
        if (static_cast<int>(d.size()) != k) {
            throw ConfigError("explicit profile '" + profile + "' has " + std::to_string(d.size()) +
                              " distances but hop_count is " + std::to_string(k));
        }
        double sum = 0.0;
        for (double v : d) {
            if (!(v > 0.0)) {
                throw ConfigError("explicit profile distances must be positive");
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) {
            throw ConfigError("explicit profile distances sum to " + format_number(sum) + ", not 1");
        }
        return d;
    }
    throw ConfigError("unknown profile '" + profile + "'");
}

namespace {

struct Options {
    std::string config_path;
    std::string out_path;
    std::string sweep;
    std::string outputs;
    std::string trials = "1000000";
    std::uint64_t seed = 1;
    unsigned chunks = std::max(1u, std::thread::hardware_concurrency());
    std::string profiles;
    bool no_timestamp = false;
};

/// Closed-form quantities for one scenario, computed only when requested.
double closed_form(const std::string& name, const Scenario& s)
{
    const auto stats = derive_hop_statistics(s);
    const auto alphas = alphas_of(stats);
    const auto links = link_powers_of(stats);
    if (name == "op_exact") {
        return outage_exact(alphas, s.gamma_th);
    }
    if (name == "op_asymptotic") {
        return outage_asymptotic(links, s.ip_over_n0, s.gamma_th);
    }
    if (name == "ber_exact") {
        return e2e_ber_from_alphas(alphas, qam_constants(s.qam_order));
    }
    if (name == "ber_asymptotic") {
        return e2e_ber_asymptotic(alphas, qam_constants(s.qam_order));
    }
    if (name == "capacity") {
        return ergodic_capacity_ind(alphas);
    }
    if (name == "capacity_min_hop") {
        return min_per_hop_capacity(alphas);
    }
    if (name == "diversity_order") {
        return diversity_coding_gain(links, s.gamma_th).diversity_order;
    }
    if (name == "coding_gain") {
        return diversity_coding_gain(links, s.gamma_th).coding_gain;
    }
    throw ConfigError("unknown output '" + name + "'");
}

const std::vector<std::string> kClosedForms{"op_exact",         "op_asymptotic",   "ber_exact",  "ber_asymptotic",
                                            "capacity",         "capacity_min_hop", "diversity_order", "coding_gain"};
const std::vector<std::string> kMcOutputs{"mc_op", "mc_ber", "mc_capacity"};

bool is_mc_output(const std::string& name)
{
    return std::find(kMcOutputs.begin(), kMcOutputs.end(), name) != kMcOutputs.end();
}

std::vector<std::string> select_outputs(const std::string& flag, const std::vector<std::string>& defaults,
                                        const std::vector<std::string>& allowed)
{
    if (flag.empty()) {
        return defaults;
    }
    std::vector<std::string> out;
    for (const auto& name : split(flag, ',')) {
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end()) {
            throw ConfigError("output '" + name + "' is not available for this command");
        }
        if (std::find(out.begin(), out.end(), name) != out.end()) {
            throw ConfigError("output '" + name + "' listed twice");
        }
        out.push_back(name);
    }
    return out;
}

std::uint64_t parse_trials(const std::string& text)
{
    std::uint64_t n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec == std::errc{} && ptr == text.data() + text.size() && !text.empty()) {
        if (n == 0) {
            throw ConfigError("--trials must be at least 1");
        }
        return n;
    }
    // scientific notation such as 1e6
    const double v = parse_double(text, "--trials");
    if (!(v >= 1.0) || v != std::floor(v) || v > 1e15) {
        throw ConfigError("--trials must be a positive integer");
    }
    return static_cast<std::uint64_t>(v);
}

std::string timestamp_utc()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

struct Context {
    Options opts;
    Config cfg;
    Sweep sweep;
};

Context prepare(const Options& opts)
{
    Context ctx{opts, {}, {}};
    ctx.cfg = opts.config_path.empty() ? Config{} : load_config(opts.config_path);
    ctx.cfg.scenario.validate();
    if (opts.sweep.empty()) {
        ctx.sweep.variable = "ip_over_n0_db";
        ctx.sweep.values = {linear_to_db(ctx.cfg.scenario.ip_over_n0)};
    } else {
        ctx.sweep = parse_sweep(opts.sweep);
    }
    return ctx;
}

Scenario point_scenario(const Context& ctx, double value)
{
    // the default single point is the config itself, without a dB round trip
    if (ctx.opts.sweep.empty()) {
        return ctx.cfg.scenario;
    }
    return apply_sweep(ctx.cfg.scenario, ctx.sweep.variable, value);
}

void write_metadata(std::ostream& os, const Context& ctx, const std::string& command)
{
    const Scenario& s = ctx.cfg.scenario;
    os << "# cogrelay " << kVersion << '\n';
    os << "# command: " << command << '\n';
    if (!ctx.opts.no_timestamp) {
        os << "# generated: " << timestamp_utc() << '\n';
    }
    os << "# hop_count: " << s.hop_count << '\n';
    os << "# pu_coord: " << format_number(s.primary_receiver.x) << ' ' << format_number(s.primary_receiver.y) << '\n';
    os << "# path_loss_exponent: " << format_number(s.path_loss_exponent) << '\n';
    os << "# gamma_th: " << format_number(s.gamma_th) << '\n';
    os << "# qam_order: " << s.qam_order << '\n';
}

void write_row(std::ostream& os, const std::vector<std::string>& cells)
{
    for (std::size_t i = 0; i < cells.size(); ++i) {
        os << (i ? "," : "") << cells[i];
    }
    os << '\n';
}

std::string cmd_analyze(const Context& ctx)
{
    const auto outputs = select_outputs(ctx.opts.outputs,
                                        {"op_exact", "op_asymptotic", "ber_exact", "ber_asymptotic", "capacity"},
                                        kClosedForms);
    std::ostringstream os;
    write_metadata(os, ctx, "analyze");
    std::vector<std::string> header{ctx.sweep.variable};
    header.insert(header.end(), outputs.begin(), outputs.end());
    write_row(os, header);
    for (double v : ctx.sweep.values) {
        const Scenario s = point_scenario(ctx, v);
        std::vector<std::string> cells{format_number(v)};
        for (const auto& name : outputs) {
            cells.push_back(format_number(closed_form(name, s)));
        }
        write_row(os, cells);
    }
    return os.str();
}

std::string cmd_optimize(const Context& ctx)
{
    std::ostringstream os;
    write_metadata(os, ctx, "optimize");
    write_row(os, {ctx.sweep.variable, "quantity", "hop", "value"});
    for (double v : ctx.sweep.values) {
        const Scenario s = point_scenario(ctx, v);
        if (s.lambda_overrides) {
            throw ConfigError("optimize needs geometry, not lambda_overrides");
        }
        const std::string x = format_number(v);
        PlacementResult p = solve_equal_ratio(s.hop_count, s.primary_receiver);
        const double eta = s.path_loss_exponent;
        const auto direct = direct_search(s.hop_count, s.primary_receiver, eta);
        const double obj = placement_objective(p.d_data, s.primary_receiver, eta);
        for (std::size_t k = 0; k < p.d_data.size(); ++k) {
            write_row(os, {x, "d_data", std::to_string(k + 1), format_number(p.d_data[k])});
        }
        for (std::size_t k = 0; k < p.d_data.size(); ++k) {
            write_row(os, {x, "d_interference", std::to_string(k + 1), format_number(p.d_interference[k])});
        }
        for (std::size_t k = 0; k < direct.d_data.size(); ++k) {
            write_row(os, {x, "d_data_direct", std::to_string(k + 1), format_number(direct.d_data[k])});
        }
        write_row(os, {x, "ratio", "", format_number(p.ratio)});
        write_row(os, {x, "residual_norm", "", format_number(p.residual_norm)});
        write_row(os, {x, "op_min", "", format_number(op_min(p, s.gamma_th, s.ip_over_n0, eta))});
        write_row(os, {x, "ber_min", "", format_number(ber_min(p, qam_constants(s.qam_order), eta))});
        write_row(os, {x, "objective_equal_ratio", "", format_number(obj)});
        write_row(os, {x, "objective_direct", "", format_number(direct.objective)});
        write_row(os, {x, "objective_gap", "", format_number(obj - direct.objective)});
    }
    return os.str();
}

std::string cmd_profiles(const Context& ctx)
{
    const auto outputs = select_outputs(ctx.opts.outputs, {"op_exact", "capacity"}, kClosedForms);
    std::vector<std::string> profiles = ctx.cfg.profiles;
    if (!ctx.opts.profiles.empty()) {
        profiles = split(ctx.opts.profiles, ',');
    }
    if (profiles.empty()) {
        throw ConfigError("no profiles requested");
    }
    std::ostringstream os;
    write_metadata(os, ctx, "profiles");
    std::vector<std::string> header{ctx.sweep.variable, "profile"};
    header.insert(header.end(), outputs.begin(), outputs.end());
    header.push_back("hop_lengths");
    write_row(os, header);
    for (double v : ctx.sweep.values) {
        const Scenario base = point_scenario(ctx, v);
        for (const auto& name : profiles) {
            const auto d = profile_hop_lengths(name, base);
            Scenario s = base;
            s.relay_positions = relay_positions_from_hops(d);
            s.validate();
            std::vector<std::string> cells{format_number(v), name};
            for (const auto& out : outputs) {
                cells.push_back(format_number(closed_form(out, s)));
            }
            std::string lengths;
            for (std::size_t k = 0; k < d.size(); ++k) {
                lengths += (k ? "/" : "") + format_number(d[k]);
            }
            cells.push_back(lengths);
            write_row(os, cells);
        }
    }
    return os.str();
}

std::string cmd_mc(const Context& ctx, std::ostream& err)
{
    std::vector<std::string> allowed = kMcOutputs;
    allowed.insert(allowed.end(), kClosedForms.begin(), kClosedForms.end());
    const auto outputs = select_outputs(ctx.opts.outputs, kMcOutputs, allowed);
    McOptions mo;
    mo.trials = parse_trials(ctx.opts.trials);
    mo.seed = ctx.opts.seed;
    mo.chunks = ctx.opts.chunks;
    if (mo.chunks < 1) {
        throw ConfigError("--chunks must be at least 1");
    }
    // the chunk count is kept out of the file: it never changes the estimates
    err << "cogrelay mc: " << mo.chunks << " chunk(s)\n";

    std::ostringstream os;
    write_metadata(os, ctx, "mc");
    os << "# seed: " << mo.seed << '\n';
    os << "# trials: " << mo.trials << '\n';
    os << "# substream_block_trials: " << kBlockTrials << '\n';
    os << "# mc_capacity: mean of (1/K) log2(1 + min_k gamma_k)\n";

    std::vector<std::string> header{ctx.sweep.variable};
    header.insert(header.end(), outputs.begin(), outputs.end());
    for (const auto& name : outputs) {
        if (is_mc_output(name)) {
            header.push_back(name + "_std_error");
        }
    }
    header.push_back("trials");
    write_row(os, header);

    for (double v : ctx.sweep.values) {
        const Scenario s = point_scenario(ctx, v);
        std::vector<std::string> values{format_number(v)};
        std::vector<std::string> errors;
        for (const auto& name : outputs) {
            if (!is_mc_output(name)) {
                values.push_back(format_number(closed_form(name, s)));
                continue;
            }
            McEstimate e;
            if (name == "mc_op") {
                e = mc_outage(s, mo);
            } else if (name == "mc_ber") {
                e = mc_ber(s, mo);
            } else {
                e = mc_capacity(s, mo);
            }
            values.push_back(format_number(e.value));
            errors.push_back(format_number(e.std_error));
        }
        values.insert(values.end(), errors.begin(), errors.end());
        values.push_back(std::to_string(mo.trials));
        write_row(os, values);
    }
    return os.str();
}

void add_common(CLI::App* sub, Options& o)
{
    sub->add_option("--config", o.config_path, "JSON scenario config (defaults to the built-in scenario)");
    sub->add_option("--out", o.out_path, "CSV output path (stdout if omitted)");
    sub->add_option("--sweep", o.sweep, "VAR=START:STOP:STEP or VAR=v1,v2,...; VAR in ip_over_n0_db, hop_count, eta, pu_x, pu_y");
    sub->add_option("--outputs", o.outputs, "comma-separated output columns");
    sub->add_flag("--no-timestamp", o.no_timestamp, "omit the generation timestamp line");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Closed-form and Monte-Carlo analysis of underlay cognitive multi-hop relaying", "cogrelay"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1, 1);
    Options o;

    auto* analyze = app.add_subcommand("analyze", "outage, BER and capacity closed forms");
    auto* optimize = app.add_subcommand("optimize", "equal-ratio relay placement and direct-search comparison");
    auto* profiles = app.add_subcommand("profiles", "compare relay-position profiles");
    auto* mc = app.add_subcommand("mc", "Monte-Carlo estimates with standard errors");
    for (auto* sub : {analyze, optimize, profiles, mc}) {
        add_common(sub, o);
    }
    profiles->add_option("--profiles", o.profiles, "comma list: uniform, optimized, random:SEED, explicit:d1/d2/...");
    mc->add_option("--trials", o.trials, "trial count (integer, 1e6 notation accepted)");
    mc->add_option("--seed", o.seed, "64-bit seed");
    mc->add_option("--chunks", o.chunks, "concurrent chunks; does not change the result");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 1;
    }

    try {
        const Context ctx = prepare(o);
        std::string csv;
        if (analyze->parsed()) {
            csv = cmd_analyze(ctx);
        } else if (optimize->parsed()) {
            csv = cmd_optimize(ctx);
        } else if (profiles->parsed()) {
            csv = cmd_profiles(ctx);
        } else {
            csv = cmd_mc(ctx, err);
        }
        if (o.out_path.empty()) {
            out << csv;
        } else {
            std::ofstream file(o.out_path, std::ios::binary);
            if (!file || !(file << csv) || !file.flush()) {
                err << "cogrelay: cannot write '" << o.out_path << "'\n";
                return 1;
            }
        }
        return 0;
    } catch (const NumericError& e) {
        err << "cogrelay: numeric failure: " << e.what() << '\n';
        return 2;
    } catch (const Error& e) {
        err << "cogrelay: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace cogrelay::cli
