#include "cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hiwx/hiwx.hpp"
#include "hiwx/io/config.hpp"
#include "hiwx/io/csv.hpp"
#include "hiwx/io/manifest.hpp"
#include "hiwx/io/tables.hpp"

namespace hiwx::cli {
namespace {

namespace fs = std::filesystem;
using io::format_number;
using io::format_optional;

constexpr const char* kOutputDirEnv = "HIWX_OUTPUT_DIR";

std::string invocation_of(const std::vector<std::string>& args) {
    std::string s = "hiwx";
    for (const auto& a : args) {
        s += ' ';
        if (a.empty() || a.find_first_of(" \t\"'") != std::string::npos) s += '"' + a + '"';
        else s += a;
    }
    return s;
}

std::string result_csv(const std::string& invocation, std::string_view header, const std::string& body) {
    std::string out = "# invocation: " + invocation + '\n';
    out += header;
    out += '\n';
    out += body;
    return out;
}

std::vector<double> parse_number_list(const std::string& text, ErrorCode code, const char* what) {
    std::vector<double> out;
    for (auto part : io::split(text)) {
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(part.data(), part.data() + part.size(), v);
        if (part.empty() || ec != std::errc{} || ptr != part.data() + part.size() || !std::isfinite(v))
            fail(code, std::string("invalid ") + what + " '" + std::string(part) + "'");
        out.push_back(v);
    }
    return out;
}

// "auto" uses the dataset's natural bound, "none" disables it, anything else
// is a number.
std::optional<double> lower_bound_from(const std::string& text, const Dataset& ds) {
    if (text == "auto") return ds.natural_lower_bound();
    if (text == "none") return std::nullopt;
    return parse_number_list(text, ErrorCode::BadConfig, "lower bound").at(0);
}

// grid<N> (e.g. grid500), "actionable", or a comma-separated list.
std::vector<double> thresholds_from(const std::string& spec, IndexKind kind, std::span<const ForecastEventPair> pairs) {
    if (spec == "actionable") return actionable_thresholds(kind);
    if (spec.rfind("grid", 0) == 0) {
        const auto count = spec.substr(4);
        std::size_t n = 0;
        auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), n);
        if (count.empty() || ec != std::errc{} || ptr != count.data() + count.size())
            fail(ErrorCode::BadThresholds, "invalid threshold grid '" + spec + "'");
        std::vector<double> values;
        for (const auto& p : pairs) values.push_back(p.value);
        return potential_thresholds(kind, values, n);
    }
    auto t = parse_number_list(spec, ErrorCode::BadThresholds, "threshold");
    if (t.empty()) fail(ErrorCode::BadThresholds, "empty threshold list");
    return t;
}

// log:lo:hi:n, lin:lo:hi:n, or a comma-separated list.
std::vector<double> alphas_from(const std::string& spec) {
    const auto parts = io::split(spec, ':');
    if (parts.size() == 4 && (parts[0] == "log" || parts[0] == "lin")) {
        const double lo = parse_number_list(std::string(parts[1]), ErrorCode::BadConfig, "alpha").at(0);
        const double hi = parse_number_list(std::string(parts[2]), ErrorCode::BadConfig, "alpha").at(0);
        const double n = parse_number_list(std::string(parts[3]), ErrorCode::BadConfig, "alpha count").at(0);
        if (!(n >= 2 && n == std::floor(n))) fail(ErrorCode::BadConfig, "alpha grid needs an integer count >= 2");
        if (parts[0] == "log") return log_spaced_alphas(lo, hi, static_cast<std::size_t>(n));
        if (!(lo > 0.0 && hi < 1.0)) fail(ErrorCode::BadConfig, "cost-loss ratios must lie in (0,1)");
        return equally_spaced_thresholds(lo, hi, static_cast<std::size_t>(n));
    }
    return parse_number_list(spec, ErrorCode::BadConfig, "alpha");
}

// Flags shared by every subcommand that reads a dataset.
struct DataOptions {
    std::string manifest;
    std::string climate_file;
    int window_days = kDefaultWindowDays;
    std::string index_file;
    double k = kDefaultAnomalyStabilizer;
    std::string lower_bound = "auto";

    void add_to(CLI::App* app, bool with_index_file) {
        app->add_option("--manifest", manifest, "Dataset manifest (manifest.json)")->required();
        app->add_option("--climate", climate_file, "Climate table from `climatology`; built from the archive if omitted");
        app->add_option("--window-days", window_days, "Half-width of the climate window in days")
            ->capture_default_str();
        if (with_index_file)
            app->add_option("--index", index_file, "Index table from `index`; computed from the dataset if omitted");
        app->add_option("--k", k, "Stabilising constant of the anomaly index")->capture_default_str();
        app->add_option("--lower-bound", lower_bound, "Crossing-point scan lower bound: auto, none or a number")
            ->capture_default_str();
    }
};

struct Inputs {
    Dataset ds;
    ClimateSet climates;
    IndexSettings settings;
    std::vector<IndexField> index_table; // from --index, if given
    bool have_index_table = false;

    std::vector<IndexField> fields(IndexKind kind, int lead) const {
        if (std::find(ds.lead_days.begin(), ds.lead_days.end(), lead) == ds.lead_days.end())
            fail(ErrorCode::BadConfig, "lead " + std::to_string(lead) + " is not in the dataset");
        if (!have_index_table) return index_fields(ds, climates, kind, lead, settings);
        std::vector<IndexField> out;
        for (const auto& f : index_table)
            if (f.kind == kind && f.lead_days == lead) out.push_back(f);
        if (out.empty())
            fail(ErrorCode::BadConfig, "index table has no " + std::string(to_string(kind)) + " values at lead " +
                                           std::to_string(lead));
        return out;
    }
};

Inputs load_inputs(const DataOptions& o) {
    if (o.window_days < 0) fail(ErrorCode::BadConfig, "--window-days must be non-negative");
    Inputs in;
    in.ds = io::load_dataset(o.manifest);
    in.climates = o.climate_file.empty() ? build_climates(in.ds, o.window_days) : io::read_climate_table(o.climate_file);
    in.settings.anf_k = o.k;
    in.settings.lower_bound = lower_bound_from(o.lower_bound, in.ds);
    if (!o.index_file.empty()) {
        in.index_table = io::read_index_table(o.index_file);
        in.have_index_table = true;
    }
    return in;
}

struct SampleOptions {
    double event_quantile = kDefaultEventQuantile;
    std::optional<double> condition_quantile;

    void add_to(CLI::App* app) {
        app->add_option("--event-quantile", event_quantile, "Observed-climate quantile defining the event")
            ->capture_default_str();
        app->add_option("--condition-quantile", condition_quantile,
                        "Keep only cases whose observation exceeds this climate quantile");
    }

    VerificationSample sample(const Inputs& in, std::span<const IndexField> fields) const {
        require_event_quantile(event_quantile);
        auto s = verification_sample(in.ds, in.climates, fields, event_quantile);
        if (condition_quantile) s = conditional_filter(s, *condition_quantile);
        return s;
    }
};

// Staged result files land in the output directory only once the whole
// command succeeded.
class Results {
public:
    Results(fs::path dir, std::string invocation) : dir_(std::move(dir)), invocation_(std::move(invocation)) {}

    void add(const std::string& name, std::string_view header, const std::string& body) {
        out_.add(dir_ / name, result_csv(invocation_, header, body));
    }
    io::OutputSet& raw() { return out_; }
    const fs::path& dir() const { return dir_; }
    void commit() { out_.commit(); }

private:
    fs::path dir_;
    std::string invocation_;
    io::OutputSet out_;
};

std::string lead_tag(IndexKind kind, int lead) {
    return std::string(to_string(kind)) + "_lead" + std::to_string(lead);
}

// ---------------------------------------------------------------------------

void cmd_synth(const std::string& config, std::optional<std::uint64_t> seed, Results& res) {
    auto cfg = io::read_scenario(config);
    if (seed) cfg.seed = *seed;
    io::stage_dataset(res.raw(), res.dir(), generate(cfg).data);
}

void cmd_climatology(const DataOptions& o, Results& res) {
    const auto ds = io::load_dataset(o.manifest);
    if (o.window_days < 0) fail(ErrorCode::BadConfig, "--window-days must be non-negative");
    const auto set = build_climates(ds, o.window_days);
    const auto text = io::climate_table_text(set);
    const auto header_end = text.find('\n');
    res.add("climate.csv", std::string_view(text).substr(0, header_end), text.substr(header_end + 1));
}

void cmd_index(const DataOptions& o, IndexKind kind, int lead, Results& res) {
    const auto in = load_inputs(o);
    const auto fields = in.fields(kind, lead);
    const auto text = io::index_table_text(fields);
    const auto header_end = text.find('\n');
    res.add("index_" + lead_tag(kind, lead) + ".csv", io::kIndexHeader, text.substr(header_end + 1));
}

void cmd_roc(const DataOptions& o, const SampleOptions& so, IndexKind kind, int lead, const std::string& tspec,
             Results& res) {
    const auto in = load_inputs(o);
    const auto fields = in.fields(kind, lead);
    const auto bin = binarize(so.sample(in, fields));
    const auto thresholds = thresholds_from(tspec, kind, bin.pairs);
    const auto tables = contingency_tables(bin.pairs, thresholds);
    const auto curve = roc_curve_from_tables(tables, thresholds);

    std::string body;
    for (const auto& p : curve.points)
        body += format_number(p.threshold) + ',' + format_number(p.false_alarm_rate) + ',' + format_number(p.hit_rate) +
                '\n';
    res.add("roc_" + lead_tag(kind, lead) + ".csv", "threshold,false_alarm_rate,hit_rate", body);

    const auto& t = tables.front();
    std::string summary = std::string(to_string(kind)) + ',' + std::to_string(lead) + ',' + tspec + ',' +
                          std::to_string(t.total()) + ',' + std::to_string(t.events()) + ',' +
                          std::to_string(bin.excluded_missing) + ',' + format_optional(curve.auc) + '\n';
    res.add("roc_" + lead_tag(kind, lead) + "_auc.csv", "kind,lead_days,thresholds,cases,events,excluded_missing,auc",
            summary);
}

void cmd_pev(const DataOptions& o, const SampleOptions& so, IndexKind kind, int lead, const std::string& tspec,
             const std::string& aspec, Results& res) {
    const auto in = load_inputs(o);
    const auto fields = in.fields(kind, lead);
    const auto bin = binarize(so.sample(in, fields));
    const auto thresholds = thresholds_from(tspec, kind, bin.pairs);
    const auto tables = contingency_tables(bin.pairs, thresholds);
    const auto alphas = alphas_from(aspec);
    const auto curve = pev_curve(tables, alphas);

    std::string body;
    for (std::size_t i = 0; i < curve.values.size(); ++i)
        body += format_number(curve.cost_loss_ratios[i]) + ',' + format_number(curve.values[i]) + ',' +
                format_number(curve.base_rate) + '\n';
    res.add("pev_" + lead_tag(kind, lead) + ".csv", "alpha,value,base_rate", body);
}

void cmd_reliability(const DataOptions& o, int lead, Results& res) {
    const auto in = load_inputs(o);
    const auto fields = in.fields(IndexKind::CPF, lead);
    const auto sample = verification_sample(in.ds, in.climates, fields);
    std::vector<ReliabilityCase> cases;
    for (const auto& r : sample.records)
        if (r.index) cases.push_back({*r.index, r.observed, std::cref(sample.climate_for(r))});
    const auto d = reliability_diagram(cases);

    using D = ReliabilityDiagram;
    std::string body;
    for (std::size_t k = 0; k < D::kBins; ++k)
        body += format_number(D::kCenters[k]) + ',' + format_number(D::kEdges[k]) + ',' +
                format_number(D::kEdges[k + 1]) + ',' + std::to_string(d.counts[k]) + ',' +
                format_number(d.case_share[k]) + ',' + format_optional(d.observed_frequency[k]) + '\n';
    res.add("reliability_lead" + std::to_string(lead) + ".csv",
            "bin_center,lower_edge,upper_edge,count,case_share,observed_frequency", body);
}

void cmd_corr(const DataOptions& o, IndexKind a, IndexKind b, int lead, bool pooled, Results& res) {
    const auto in = load_inputs(o);
    const auto fa = in.fields(a, lead);
    const auto fb = in.fields(b, lead);
    const auto avg = mean_kendall_tau(fa, fb);
    std::string body;
    for (const auto& d : avg.per_date) body += format_date(d.validity_date) + ',' + format_number(d.tau) + '\n';
    body += "mean," + format_number(avg.mean) + '\n';
    if (pooled) body += "pooled," + format_number(pooled_kendall_tau(fa, fb).tau) + '\n';
    res.add("corr_" + std::string(to_string(a)) + '_' + std::string(to_string(b)) + "_lead" + std::to_string(lead) +
                ".csv",
            "validity_date,tau", body);
}

struct DatedPair {
    Date date{};
    ForecastEventPair pair;
};

double auc_of_dated(std::span<const DatedPair> recs, IndexKind kind, const std::string& tspec) {
    std::vector<ForecastEventPair> pairs;
    pairs.reserve(recs.size());
    for (const auto& r : recs) pairs.push_back(r.pair);
    return auc_of(pairs, thresholds_from(tspec, kind, pairs));
}

void cmd_auc_by_lead(const DataOptions& o, const SampleOptions& so, std::vector<std::string> kind_names,
                     IndexKind skill_a, IndexKind skill_b, std::size_t replicates, int block_days, std::uint64_t seed,
                     Results& res) {
    const auto in = load_inputs(o);
    std::vector<IndexKind> kinds;
    for (const auto& k : kind_names) kinds.push_back(parse_index_kind(k));
    BootstrapSettings bs;
    bs.block_days = block_days;
    bs.replicates = replicates;
    bs.seed = seed;

    // NA when disabled, or when some resample leaves the statistic undefined.
    auto ci_text = [&](auto&& compute) {
        if (replicates == 0) return std::string("NA,NA");
        try {
            const auto ci = compute();
            return format_number(ci.low) + ',' + format_number(ci.high);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ReferencePerfect && e.code() != ErrorCode::DegenerateSample) throw;
            return std::string("NA,NA");
        }
    };

    std::string body, skill_body;
    for (int lead : in.ds.lead_days) {
        std::map<IndexKind, VerificationSample> samples;
        auto sample_of = [&](IndexKind kind) -> const VerificationSample& {
            auto it = samples.find(kind);
            if (it == samples.end()) it = samples.emplace(kind, so.sample(in, in.fields(kind, lead))).first;
            return it->second;
        };
        for (IndexKind kind : kinds) {
            const auto& sample = sample_of(kind);
            std::vector<DatedPair> recs;
            for (const auto& r : sample.records) {
                if (!r.index) continue;
                const bool event = r.observed > sample.climate_for(r).quantile(sample.event_quantile);
                recs.push_back({r.validity_date, {*r.index, event}});
            }
            for (const std::string tspec : {"grid500", "actionable"}) {
                if (tspec == "actionable" && kind == IndexKind::ANF) continue;
                const double auc = auc_of_dated(recs, kind, tspec);
                const auto ci = ci_text([&] {
                    return block_bootstrap_ci(
                        std::span<const DatedPair>(recs), [](const DatedPair& r) { return r.date; },
                        [&](std::span<const DatedPair> rs) { return auc_of_dated(rs, kind, tspec); }, bs);
                });
                body += std::string(to_string(kind)) + ',' + std::to_string(lead) + ',' + tspec + ',' +
                        format_number(auc) + ',' + ci + '\n';
            }
        }

        const auto paired = paired_records(sample_of(skill_a), sample_of(skill_b));
        for (const std::string tspec : {"grid500", "actionable"}) {
            if (tspec == "actionable" && (skill_a == IndexKind::ANF || skill_b == IndexKind::ANF)) continue;
            auto skill = [&](std::span<const PairedIndexRecord> rs) {
                std::vector<ForecastEventPair> pa, pb;
                for (const auto& r : rs) {
                    pa.push_back({r.a, r.event});
                    pb.push_back({r.b, r.event});
                }
                return auc_skill_score(auc_of(pa, thresholds_from(tspec, skill_a, pa)),
                                       auc_of(pb, thresholds_from(tspec, skill_b, pb)));
            };
            // Undefined when the reference discriminates perfectly.
            std::optional<double> s;
            std::string ci = "NA,NA";
            try {
                s = skill(paired);
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ReferencePerfect) throw;
            }
            if (s)
                ci = ci_text([&] {
                    return block_bootstrap_ci(
                        std::span<const PairedIndexRecord>(paired),
                        [](const PairedIndexRecord& r) { return r.validity_date; }, skill, bs);
                });
            skill_body += std::string(to_string(skill_a)) + ',' + std::string(to_string(skill_b)) + ',' +
                          std::to_string(lead) + ',' + tspec + ',' + format_optional(s) + ',' + ci + '\n';
        }
    }
    res.add("auc_by_lead.csv", "kind,lead_days,thresholds,auc,ci_low,ci_high", body);
    res.add("auc_skill_by_lead.csv", "kind,reference,lead_days,thresholds,skill_score,ci_low,ci_high", skill_body);
}

void cmd_hist(const DataOptions& o, IndexKind kind, int lead, const std::string& bins, Results& res) {
    const auto edges = parse_number_list(bins, ErrorCode::BadBins, "bin edge");
    const auto in = load_inputs(o);
    const auto fields = in.fields(kind, lead);
    const auto counts = index_histogram(fields, edges);
    std::string body;
    for (std::size_t i = 0; i < counts.size(); ++i)
        body += format_number(edges[i]) + ',' + format_number(edges[i + 1]) + ',' + std::to_string(counts[i]) + '\n';
    res.add("hist_" + lead_tag(kind, lead) + ".csv", "lower,upper,count", body);
}

int exit_code_for(ErrorCode code) {
    switch (code) {
    case ErrorCode::Usage: return kExitUsage;
    case ErrorCode::ParseError:
    case ErrorCode::IoError:
    case ErrorCode::ManifestMismatch: return kExitInput;
    default: return kExitComputation;
    }
}

void report(std::ostream& err, std::string_view code, std::string message) {
    for (auto& c : message)
        if (c == '\n' || c == '\r') c = ' ';
    err << "error: " << code << ": " << message << '\n';
}

IndexKind kind_option(const std::string& s) { return parse_index_kind(s); }

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Ensemble indices for high-impact weather and their verification", "hiwx"};
    app.require_subcommand(1);
    std::string out_dir;
    const char* env_dir = std::getenv(kOutputDirEnv);
    app.add_option("--out", out_dir, "Output directory (default: $HIWX_OUTPUT_DIR, else the working directory)");
    app.fallthrough();

    auto* synth = app.add_subcommand("synth", "Generate a synthetic dataset");
    std::string config;
    std::optional<std::uint64_t> synth_seed;
    synth->add_option("--config", config, "Scenario configuration (JSON)")->required();
    synth->add_option("--seed", synth_seed, "Override the configuration's seed");

    auto* clim = app.add_subcommand("climatology", "Build model and observed climate grids");
    DataOptions clim_opts;
    clim->add_option("--manifest", clim_opts.manifest, "Dataset manifest")->required();
    clim->add_option("--window-days", clim_opts.window_days, "Half-width of the climate window in days")
        ->capture_default_str();

    auto* index = app.add_subcommand("index", "Compute an index field for every validity date");
    DataOptions index_opts;
    std::string index_kind;
    int index_lead = 0;
    index_opts.add_to(index, false);
    index->add_option("--kind", index_kind, "cpf, efi, sot or anf")->required();
    index->add_option("--lead", index_lead, "Lead time in days")->required();

    auto* verify = app.add_subcommand("verify", "Verify index forecasts against observed events");
    verify->require_subcommand(1);

    DataOptions v_opts;
    SampleOptions s_opts;
    std::string v_kind = "cpf", thresholds = "grid500", alphas = "log:0.001:0.999:100", corr_a = "cpf",
                corr_b = "efi", hist_bins;
    int v_lead = 0, block_days = 5;
    bool pooled = false;
    std::size_t replicates = 1000;
    std::uint64_t seed = 0;
    std::vector<std::string> auc_kinds{"cpf", "efi", "sot", "anf"};

    auto* roc = verify->add_subcommand("roc", "ROC points and area under the curve");
    v_opts.add_to(roc, true);
    s_opts.add_to(roc);
    roc->add_option("--kind", v_kind)->capture_default_str();
    roc->add_option("--lead", v_lead)->required();
    roc->add_option("--thresholds", thresholds, "grid<N>, actionable, or a comma-separated list")
        ->capture_default_str();

    auto* pev = verify->add_subcommand("pev", "Potential economic value envelope");
    v_opts.add_to(pev, true);
    s_opts.add_to(pev);
    pev->add_option("--kind", v_kind)->capture_default_str();
    pev->add_option("--lead", v_lead)->required();
    pev->add_option("--thresholds", thresholds)->capture_default_str();
    pev->add_option("--alphas", alphas, "log:lo:hi:n, lin:lo:hi:n, or a comma-separated list")->capture_default_str();

    auto* rel = verify->add_subcommand("reliability", "Crossing-point forecast reliability bins");
    v_opts.add_to(rel, true);
    rel->add_option("--lead", v_lead)->required();

    auto* corr = verify->add_subcommand("corr", "Kendall rank correlation between two indices");
    v_opts.add_to(corr, true);
    corr->add_option("--a", corr_a)->capture_default_str();
    corr->add_option("--b", corr_b)->capture_default_str();
    corr->add_option("--lead", v_lead)->required();
    corr->add_flag("--pooled", pooled, "Also report tau over all dates pooled");

    auto* abl = verify->add_subcommand("auc-by-lead", "AUC per index and lead time, with block-bootstrap intervals");
    v_opts.add_to(abl, true);
    s_opts.add_to(abl);
    abl->add_option("--kinds", auc_kinds, "Indices to score")->delimiter(',')->capture_default_str();
    abl->add_option("--a", corr_a, "Index scored by the skill score")->capture_default_str();
    abl->add_option("--b", corr_b, "Reference index of the skill score")->capture_default_str();
    abl->add_option("--bootstrap", replicates, "Bootstrap replicates (0 disables intervals)")->capture_default_str();
    abl->add_option("--block-days", block_days)->capture_default_str();
    abl->add_option("--seed", seed)->capture_default_str();

    auto* hist = app.add_subcommand("hist", "Histogram of index values");
    DataOptions hist_opts;
    hist_opts.add_to(hist, true);
    hist->add_option("--kind", v_kind)->capture_default_str();
    hist->add_option("--lead", v_lead)->required();
    hist->add_option("--bins", hist_bins, "Comma-separated bin edges")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().back()->help());
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        report(err, "Usage", e.what());
        return kExitUsage;
    }

    fs::path dir = !out_dir.empty() ? fs::path(out_dir) : env_dir && *env_dir ? fs::path(env_dir) : fs::path(".");
    Results res(dir, invocation_of(args));
    try {
        if (*synth) {
            cmd_synth(config, synth_seed, res);
        } else if (*clim) {
            cmd_climatology(clim_opts, res);
        } else if (*index) {
            cmd_index(index_opts, kind_option(index_kind), index_lead, res);
        } else if (*hist) {
            cmd_hist(hist_opts, kind_option(v_kind), v_lead, hist_bins, res);
        } else if (*roc) {
            cmd_roc(v_opts, s_opts, kind_option(v_kind), v_lead, thresholds, res);
        } else if (*pev) {
            cmd_pev(v_opts, s_opts, kind_option(v_kind), v_lead, thresholds, alphas, res);
        } else if (*rel) {
            cmd_reliability(v_opts, v_lead, res);
        } else if (*corr) {
            cmd_corr(v_opts, kind_option(corr_a), kind_option(corr_b), v_lead, pooled, res);
        } else if (*abl) {
            cmd_auc_by_lead(v_opts, s_opts, auc_kinds, kind_option(corr_a), kind_option(corr_b), replicates, block_days,
                            seed, res);
        }
        res.commit();
    } catch (const Error& e) {
        report(err, to_string(e.code()), e.what());
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        report(err, "Internal", e.what());
        return kExitFailure;
    }
    return kExitOk;
}

} // namespace hiwx::cli
