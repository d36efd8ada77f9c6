// Acceptance suite: end-to-end properties of the detection pipeline and
// simulator, one [PASS]/[FAIL] line per criterion. Always-on checks, never
// compiled out.

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "test_util.hpp"
#include "vanet/config.hpp"
#include "vanet/errors.hpp"
#include "vanet/fixtures.hpp"
#include "vanet/sim.hpp"

using namespace vanet;
using namespace vanet::sim;

namespace {

int g_failed_criteria = 0;
bool g_ok = true;
std::string g_detail;

void check(bool cond, const std::string& what) {
    if (!cond && g_ok) {
        g_ok = false;
        g_detail = what;
    }
}

// Every metrics CSV produced anywhere in this suite; criterion 4 audits
// all of them row by row.
std::vector<std::string> g_all_csvs;

ScenarioMetrics run_collect(const World& world, const RunOptions& opts = {}) {
    ScenarioMetrics m = run(world, opts);
    g_all_csvs.push_back(metrics_csv(m));
    return m;
}

RegionSpec region_at(double x0) { return RegionSpec{x0, 0, x0 + 1000, 1000, {}}; }

ScenarioConfig base_config(std::uint64_t seed, std::size_t regions, std::uint32_t vehicles,
                           std::uint32_t messages) {
    ScenarioConfig cfg;
    cfg.seed = seed;
    for (std::size_t i = 0; i < regions; ++i)
        cfg.regions.push_back(region_at(static_cast<double>(i) * 1000));
    cfg.vehicles = vehicles;
    cfg.accident_messages = messages;
    return cfg;
}

DelayModel flat_model() {
    DelayModel m;
    m.propagation_speed = 1e15;  // distances round to zero
    m.per_byte_tx = 0;
    return m;
}

// ---------------------------------------------------------------------------

// C1. Soundness: 100 seeded honest-only scenarios, >= 10^4 messages in
// total, zero false positives and zero faults.
void c1_soundness() {
    std::uint64_t total = 0;
    for (std::uint64_t s = 1; s <= 100; ++s) {
        ScenarioConfig cfg = base_config(s, 1 + s % 3, 10 + (s % 4) * 10, 100);
        cfg.message_interval_us = (s % 2) ? 0 : 50'000;
        cfg.key_cache = (s % 3) == 0;
        ScenarioMetrics m = run_collect(build_world(cfg));
        total += m.messages_born;
        check(m.false_positives == 0, "false positive at seed " + std::to_string(s));
        check(m.faults == 0, "fault at seed " + std::to_string(s));
        check(m.verdicts == m.messages_born, "lost message at seed " + std::to_string(s));
        check(m.messages_born == m.verdicts + m.faults + m.escrow_errors,
              "conservation violated at seed " + std::to_string(s));
    }
    check(total >= 10'000, "only " + std::to_string(total) + " messages simulated");
}

// C2. Detection completeness: in 100 seeded attacker scenarios every forged
// message that passes the RSU check ends SybilDetected; zero misses.
void c2_completeness() {
    for (std::uint64_t s = 1; s <= 100; ++s) {
        ScenarioConfig cfg = base_config(1000 + s, 2, 12, 5);
        cfg.attackers.push_back({7, {1, 2, 3}});
        cfg.attackers.push_back({9, {4, 5}});
        cfg.message_interval_us = (s % 2) ? 0 : 10'000;
        ScenarioMetrics m = run_collect(build_world(cfg));
        std::uint64_t forged_passing = 0, detected = 0, missed = 0;
        for (const MessageRecord& r : m.records) {
            if (r.honest) continue;
            check(r.rsu_verdict == protocol::RsuVerdict::IntegrityOk,
                  "insider message failed the RSU check at seed " + std::to_string(s));
            if (r.rsu_verdict != protocol::RsuVerdict::IntegrityOk) continue;
            ++forged_passing;
            if (r.detection == protocol::DetectionVerdict::SybilDetected)
                ++detected;
            else
                ++missed;
        }
        check(forged_passing == 5, "expected 5 forged messages at seed " + std::to_string(s));
        check(missed == 0, std::to_string(missed) + " forged messages escaped at seed " +
                               std::to_string(s));
        check(detected == m.detections, "detection count mismatch");
        check(m.false_positives == 0, "false positive at seed " + std::to_string(s));
    }
}

// C3. Tamper wall: 10^3 single-byte mutations of honest messages all fault
// at the RSU; none reaches detection in the pipeline driver.
void c3_tamper_wall() {
    testutil::Rng rng(303);
    std::uint64_t mutations = 0, faulted = 0, reached_detection = 0;
    for (int i = 0; i < 50; ++i) {
        crypto::SymmetricKey group_key = rng.key();
        crypto::SymmetricKey vehicle_key = rng.key();
        pki::VehicleId vehicle;
        Bytes vid = rng.bytes(vehicle.id.size());
        std::copy(vid.begin(), vid.end(), vehicle.id.begin());
        pki::CaId ca_id;
        crypto::KeyPair ca = crypto::generate_keypair(rng.seed32());
        protocol::SafetyMessage msg =
            protocol::build_safety_message(rng.bytes(1 + rng.below(200)), group_key, vehicle,
                                           vehicle_key, ca_id, ca.public_key, rng.seed32());
        for (int k = 0; k < 20; ++k) {
            protocol::SafetyMessage m = msg;
            std::uint8_t delta = static_cast<std::uint8_t>(1 + rng.below(255));
            if (k % 2 == 0)
                m.payload[rng.below(m.payload.size())] ^= delta;
            else
                m.outer_digest.bytes[rng.below(m.outer_digest.bytes.size())] ^= delta;
            ++mutations;
            // reference driver: a Fault terminates the pipeline at phase 2
            if (protocol::rsu_check(m, group_key) == protocol::RsuVerdict::Fault) {
                ++faulted;
            } else {
                ++reached_detection;
            }
        }
    }
    check(mutations == 1000, "expected 1000 mutations");
    check(faulted == 1000, std::to_string(1000 - faulted) + " mutations were not faulted");
    check(reached_detection == 0, "a mutated message reached detection");
}

// C4. Eq-style exactness: in every per-message CSV row of every run this
// suite performed, total_us == t1+t2+t3+t4 with zero tolerance.
void c4_total_exactness() {
    std::uint64_t rows = 0;
    check(!g_all_csvs.empty(), "no runs were collected");
    for (const std::string& csv : g_all_csvs) {
        auto lines = testutil::split(csv, '\n');
        for (std::size_t i = 1; i < lines.size(); ++i) {
            if (lines[i].empty()) continue;
            auto f = testutil::split(lines[i], ',');
            check(f.size() == 11, "bad CSV row: " + lines[i]);
            if (f.size() != 11) return;
            long long t1 = std::stoll(f[5]), t2 = std::stoll(f[6]), t3 = std::stoll(f[7]),
                      t4 = std::stoll(f[8]), total = std::stoll(f[9]);
            if (total != t1 + t2 + t3 + t4) {
                check(false, "total mismatch in row: " + lines[i]);
                return;
            }
            ++rows;
        }
    }
    check(rows >= 10'000, "only " + std::to_string(rows) + " rows audited");
}

// C5. Shape analogues: a queue-free vehicles sweep (fixed 5 messages) has
// an exactly flat mean detection delay; a messages sweep with the CA
// queueing has a non-decreasing (and overall increasing) mean total delay.
void c5_sweep_shapes() {
    ScenarioConfig flat = base_config(4242, 2, 10, 5);
    flat.delay_model = flat_model();
    flat.message_interval_us = 1'000'000;  // queue-free: no contention
    auto rows =
        sweep(flat, SweepAxis::vehicles, {10, 20, 30, 40, 50, 60, 70, 80, 90, 100});
    check(rows.size() == 10, "expected 10 sweep rows");
    for (const SweepRow& r : rows) {
        check(r.born == 5, "expected 5 messages per row");
        check(r.sum_total_us == rows[0].sum_total_us,
              "mean detection delay differs at vehicles=" + std::to_string(r.value));
        check(r.false_positives == 0 && r.faults == 0, "unsound sweep row");
    }

    ScenarioConfig queued = base_config(4242, 1, 10, 5);
    queued.delay_model = flat_model();
    queued.message_interval_us = 0;  // simultaneous births load the single servers
    auto mrows = sweep(queued, SweepAxis::messages, {5, 10, 20, 40});
    check(mrows.size() == 4, "expected 4 sweep rows");
    for (std::size_t i = 1; i < mrows.size(); ++i) {
        // exact rational comparison of means: sum_i/born_i
        __int128 lhs = static_cast<__int128>(mrows[i].sum_total_us) * mrows[i - 1].born;
        __int128 rhs = static_cast<__int128>(mrows[i - 1].sum_total_us) * mrows[i].born;
        check(lhs >= rhs, "mean total delay decreased at messages=" +
                              std::to_string(mrows[i].value));
    }
    __int128 last = static_cast<__int128>(mrows.back().sum_total_us) * mrows.front().born;
    __int128 first = static_cast<__int128>(mrows.front().sum_total_us) * mrows.back().born;
    check(last > first, "queueing did not increase the mean total delay");
}

// C6. Cross-region limitation: the scripted move always terminates in an
// explicit escrow/open error, never a Legitimate or silent verdict.
void c6_cross_region() {
    for (std::uint64_t s = 1; s <= 10; ++s) {
        ScenarioConfig cfg = base_config(7000 + s, 2, 4, 3);
        cfg.message_interval_us = 1000;
        cfg.cross_region_move = MoveSpec{0, 0, 1, 500'000};
        ScenarioMetrics m = run_collect(build_world(cfg));
        check(m.records.size() == 4, "expected 3 accident + 1 scripted message");
        const MessageRecord& moved = m.records.back();
        check(moved.terminal == TerminalKind::EscrowError,
              "moved message did not end in an escrow/open error at seed " +
                  std::to_string(s));
        check(moved.error == "open_failed", "unexpected error '" + moved.error + "'");
        check(!moved.detection.has_value(),
              "moved message received a verdict at seed " + std::to_string(s));
        check(m.escrow_errors == 1, "expected exactly one escrow error");
        check(m.messages_born == m.verdicts + m.faults + m.escrow_errors,
              "conservation violated at seed " + std::to_string(s));
    }
}

// C7. Certificate gate: an AC flagged before key issuance never yields a
// group key, and every send attempt is rejected pre-broadcast.
void c7_certificate_gate() {
    for (std::uint64_t s = 1; s <= 20; ++s) {
        ScenarioConfig cfg = base_config(9000 + s, 2, 6, 12);
        cfg.flagged = {2};
        World w = build_world(cfg);
        check(!w.vehicles[2].group_key.has_value(), "flagged vehicle obtained a group key");
        try {
            w.home_ca.issue_group_key(w.map.at(0), w.vehicles[2].id);
            check(false, "issue_group_key did not deny the AC holder");
        } catch (const Error& e) {
            check(e.code() == Errc::certificate_revoked, "wrong denial code");
        }

        ScenarioMetrics m = run_collect(w);
        std::uint64_t rejected = 0;
        for (const MessageRecord& r : m.records) {
            if (r.claimed == w.vehicles[2].id) {
                check(r.terminal == TerminalKind::Rejected,
                      "flagged vehicle's message was not rejected pre-broadcast");
                check(!r.rsu_verdict.has_value(), "rejected message reached an RSU");
                ++rejected;
            }
        }
        check(rejected == 2, "expected 2 rejected send attempts");  // senders cycle mod 6
        check(m.rejected_sends == 2, "rejected_sends aggregate mismatch");
        check(m.messages_born == 10, "born count mismatch");
    }
}

// C8. Oracle equivalence: for 100 messages, the simulator's verdicts equal
// the verdicts of composing the four pure protocol operations on the same
// wire bytes.
void c8_oracle_equivalence() {
    ScenarioConfig cfg = base_config(31337, 2, 10, 60);
    for (std::uint32_t k = 0; k < 5; ++k) {
        AttackerSpec a;
        a.vehicle = k;
        for (std::uint32_t j = 0; j < 8; ++j) a.spoofs.push_back((k + 1 + j) % 10);
        cfg.attackers.push_back(a);
    }
    World w = build_world(cfg);
    RunOptions opts;
    opts.capture = true;
    ScenarioMetrics m = run_collect(w, opts);
    check(m.records.size() == 100, "expected 100 messages");

    for (const MessageRecord& r : m.records) {
        protocol::SafetyMessage msg = protocol::decode_message(r.encoded);
        const pki::Region& region = w.map.at(r.region);
        protocol::RsuVerdict rsu = protocol::rsu_check(msg, region.group_key);
        check(rsu == *r.rsu_verdict, "RSU verdict diverges from the oracle");
        if (rsu != protocol::RsuVerdict::IntegrityOk) continue;
        protocol::ObuIdPlain plain =
            protocol::open_obu_id(msg.obu_id, region.ca_keys.secret_key);
        crypto::SymmetricKey key = w.home_ca.escrow_key(region.id, plain.vehicle);
        protocol::DetectionResult oracle =
            protocol::detect_sybil(plain, msg.outer_digest, key);
        check(oracle.verdict == *r.detection, "detection verdict diverges from the oracle");
    }
}

// C9. Fixtures: the frozen golden vectors (independent Python oracle) match
// the implementation bit for bit.
void c9_fixtures() {
    const std::pair<const char*, std::string (*)()> files[] = {
        {"keyed_digest_vectors.txt", &fixtures::keyed_digest_vectors},
        {"keypair_vectors.txt", &fixtures::keypair_vectors},
        {"encrypt_vectors.txt", &fixtures::encrypt_vectors},
        {"wire_vectors.txt", &fixtures::wire_vectors},
    };
    for (const auto& [name, generate] : files) {
        std::string frozen = testutil::read_file(testutil::fixture_path(name));
        check(!frozen.empty(), std::string(name) + " is empty");
        check(frozen == generate(), std::string(name) + " diverges from the implementation");
    }
}

struct CriterionResult {
    int number;
    std::string title;
    bool ok;
    std::string detail;
};

}  // namespace

int main() {
    std::vector<CriterionResult> results;
    auto run_criterion = [&](int number, const std::string& title, void (*fn)()) {
        g_ok = true;
        g_detail.clear();
        try {
            fn();
        } catch (const std::exception& e) {
            check(false, std::string("unexpected exception: ") + e.what());
        }
        results.push_back({number, title, g_ok, g_detail});
        if (!g_ok) ++g_failed_criteria;
    };

    // criterion 4 audits every CSV the other criteria produced, so it runs last
    run_criterion(1, "soundness: 100 honest scenarios, no false positives or faults",
                  &c1_soundness);
    run_criterion(2, "completeness: every forged message passing the RSU is detected",
                  &c2_completeness);
    run_criterion(3, "tamper wall: 1000 single-byte mutations all fault at the RSU",
                  &c3_tamper_wall);
    run_criterion(5, "sweep shapes: flat queue-free vehicle sweep, increasing message sweep",
                  &c5_sweep_shapes);
    run_criterion(6, "cross-region move ends in an explicit escrow/open error",
                  &c6_cross_region);
    run_criterion(7, "certificate gate: AC holders never send", &c7_certificate_gate);
    run_criterion(8, "oracle equivalence: simulator verdicts match the pure pipeline",
                  &c8_oracle_equivalence);
    run_criterion(9, "golden fixtures match bit-exactly", &c9_fixtures);
    run_criterion(4, "delay totals are exact sums in every emitted record",
                  &c4_total_exactness);

    std::sort(results.begin(), results.end(),
              [](const CriterionResult& a, const CriterionResult& b) {
                  return a.number < b.number;
              });
    for (const CriterionResult& r : results) {
        if (r.ok)
            std::printf("[PASS] C%d %s\n", r.number, r.title.c_str());
        else
            std::printf("[FAIL] C%d %s -- %s\n", r.number, r.title.c_str(), r.detail.c_str());
    }
    return g_failed_criteria == 0 ? 0 : 1;
}
