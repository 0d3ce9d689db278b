// Four indices for one forecast against its model climate.
//
//   indices_demo [seed]

#include <cstdio>
#include <cstdlib>
#include <vector>

#include <boost/random/normal_distribution.hpp>

#include "hiwx/hiwx.hpp"

int main(int argc, char** argv) {
    using namespace hiwx;
    const std::uint64_t seed = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 1;
    auto eng = make_engine(seed);

    // 50 members from N(1, 0.5) against a climate pooled from 2000 N(0, 1)
    // reforecast values: the curves cross once near x = 2.
    boost::random::normal_distribution<double> forecast_draw(1.0, 0.5), climate_draw(0.0, 1.0);
    std::vector<double> members(50), pooled(2000);
    for (auto& m : members) m = forecast_draw(eng);
    for (auto& x : pooled) x = climate_draw(eng);

    const EmpiricalDistribution f(members);
    const auto g = make_climate(pooled, "demo", day_of_year(parse_date("2021-07-14")));

    const auto crossing = cpf(f, g);
    std::printf("cpf  %.4f  (%s", crossing.cpf, std::string(to_string(crossing.branch)).c_str());
    if (crossing.y_star) std::printf(", y* = %.3f", *crossing.y_star);
    if (crossing.cpf < 1.0) std::printf(", return period %.1f years", return_period(crossing.cpf));
    std::printf(")\n");
    for (auto kind : {IndexKind::EFI, IndexKind::SOT, IndexKind::ANF}) {
        const auto v = compute_index(kind, f, g);
        if (v.missing()) std::printf("%s  NA\n", std::string(to_string(kind)).c_str());
        else std::printf("%s  %.4f\n", std::string(to_string(kind)).c_str(), *v.value);
    }
}
