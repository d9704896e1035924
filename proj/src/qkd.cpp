#include "tbq/qkd.hpp"

#include <cmath>

namespace tbq {

QkdSession qkd_run(std::uint64_t rounds, const ChannelParams& channel, std::uint64_t seed,
                   bool keep_records) {
    if (rounds < 1) throw Error("qkd_run requires at least one round");

    const MubSet mub = mub_qutrit();
    std::vector<MeasurementSetup> setups;
    setups.reserve(4);
    for (const auto& basis : mub.bases)
        setups.emplace_back(basis, channel.detector_efficiency, GateOptions::lossless());

    const double channel_t = std::pow(10.0, -channel.loss_db / 10.0);

    QkdSession session;
    session.rounds = rounds;
    session.channel = channel;
    session.seed = seed;
    if (keep_records) session.records.reserve(rounds);

    for (std::uint64_t r = 0; r < rounds; ++r) {
        SplitMix64 rng = round_rng(seed, r);
        QkdRecord rec;
        rec.alice_basis = static_cast<std::uint8_t>(rng.below(4));
        rec.alice_state = static_cast<std::uint8_t>(rng.below(3));

        const QuditState* sent = &mub.bases[rec.alice_basis][rec.alice_state];
        const bool depolarized = rng.uniform() < channel.depolarizing_p;
        const QuditState* arrived = sent;
        if (depolarized) arrived = &mub.bases[0][rng.below(3)];

        rec.bob_basis = static_cast<std::uint8_t>(rng.below(4));
        const auto outcome = setups[rec.bob_basis].sample(*arrived, rng, channel_t);

        rec.outcome = outcome ? static_cast<std::int8_t>(*outcome) : std::int8_t{-1};
        rec.sifted = outcome.has_value() && rec.bob_basis == rec.alice_basis;
        rec.error = rec.sifted && *outcome != rec.alice_state;

        if (rec.sifted) {
            ++session.sifted_count;
            ++session.per_basis[rec.alice_basis][0];
            if (rec.error) {
                ++session.error_count;
                ++session.per_basis[rec.alice_basis][1];
            }
        }
        if (keep_records) session.records.push_back(rec);
    }

    session.sift_rate = static_cast<double>(session.sifted_count) / static_cast<double>(rounds);
    session.qber = session.sifted_count == 0
                       ? 0.0
                       : static_cast<double>(session.error_count) /
                             static_cast<double>(session.sifted_count);
    return session;
}

} // namespace tbq
