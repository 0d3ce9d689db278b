// Synthetic experiment: ROC area of CPF and EFI by lead time, with a
// block-bootstrap interval on the CPF-versus-EFI area skill score.
//
//   lead_time_skill [scenario.json]

#include <cstdio>
#include <span>
#include <vector>

#include "hiwx/hiwx.hpp"
#include "hiwx/io/config.hpp"

using namespace hiwx;

namespace {

double potential_auc(IndexKind kind, std::span<const PairedIndexRecord> recs, bool use_a) {
    std::vector<ForecastEventPair> pairs;
    std::vector<double> values;
    for (const auto& r : recs) {
        const double v = use_a ? r.a : r.b;
        pairs.push_back({v, r.event});
        values.push_back(v);
    }
    return auc_of(pairs, potential_thresholds(kind, values));
}

} // namespace

int main(int argc, char** argv) {
    ScenarioConfig cfg;
    if (argc > 1) {
        cfg = io::read_scenario(argv[1]);
    } else {
        cfg.locations = 30;
        cfg.days = 60;
        cfg.ensemble_size = 20;
        cfg.years = 10;
    }
    const auto syn = generate(cfg);
    const auto climates = build_climates(syn.data, cfg.window_days);
    IndexSettings settings;
    settings.lower_bound = syn.data.natural_lower_bound();

    std::printf("lead  auc_cpf  auc_efi  skill   ci_low  ci_high\n");
    for (int lead : syn.data.lead_days) {
        const auto cpf_fields = index_fields(syn.data, climates, IndexKind::CPF, lead, settings);
        const auto efi_fields = index_fields(syn.data, climates, IndexKind::EFI, lead, settings);
        const auto recs = paired_records(verification_sample(syn.data, climates, cpf_fields),
                                         verification_sample(syn.data, climates, efi_fields));

        auto skill = [](std::span<const PairedIndexRecord> r) {
            return auc_skill_score(potential_auc(IndexKind::CPF, r, true), potential_auc(IndexKind::EFI, r, false));
        };
        BootstrapSettings bs;
        bs.replicates = 200;
        bs.seed = cfg.seed;
        const std::span<const PairedIndexRecord> view(recs);
        const auto ci = block_bootstrap_ci(view, [](const PairedIndexRecord& r) { return r.validity_date; }, skill, bs);
        std::printf("%4d  %7.4f  %7.4f  %6.3f  %6.3f  %7.3f\n", lead, potential_auc(IndexKind::CPF, view, true),
                    potential_auc(IndexKind::EFI, view, false), skill(view), ci.low, ci.high);
    }
}
