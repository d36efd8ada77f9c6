#include "vanet/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <queue>
#include <tuple>

#include "vanet/errors.hpp"

namespace vanet::sim {

namespace {

constexpr std::size_t PAYLOAD_SIZE = 64;  // fixed accident-report payload size
constexpr std::string_view KEY_LABEL = "vanet.symkey.v1";

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (char c : s) {
        h ^= static_cast<std::uint8_t>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Counter-style derivation: the value depends only on (seed, tag, a, b),
// never on how many draws preceded it, so per-vehicle quantities are
// invariant in the total vehicle count.
std::uint64_t mix(std::uint64_t seed, std::string_view tag, std::uint64_t a = 0,
                  std::uint64_t b = 0) {
    std::uint64_t h = splitmix64(seed ^ fnv1a(tag));
    h = splitmix64(h ^ a);
    h = splitmix64(h ^ (b + 0x517cc1b727220a95ULL));
    return h;
}

double u01(std::uint64_t r) { return static_cast<double>(r >> 11) * 0x1.0p-53; }

crypto::Seed seed32(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    crypto::Seed s{};
    for (int k = 0; k < 4; ++k) {
        std::uint64_t w = mix(seed, tag, index, static_cast<std::uint64_t>(k) + 1);
        for (int j = 0; j < 8; ++j)
            s[static_cast<std::size_t>(k) * 8 + static_cast<std::size_t>(j)] =
                static_cast<std::uint8_t>(w >> (56 - 8 * j));
    }
    return s;
}

void put_u64_be(std::uint8_t* out, std::uint64_t v) {
    for (int j = 0; j < 8; ++j) out[j] = static_cast<std::uint8_t>(v >> (56 - 8 * j));
}

pki::VehicleId vehicle_id_for(std::uint64_t seed, std::uint32_t index) {
    pki::VehicleId id;
    put_u64_be(id.id.data(), mix(seed, "vehicle.id", index));
    put_u64_be(id.id.data() + 8, index);  // uniqueness by construction
    return id;
}

pki::CaId ca_id_for(std::uint64_t seed, std::string_view tag, std::uint64_t index) {
    pki::CaId id;
    put_u64_be(id.id.data(), mix(seed, tag, index));
    return id;
}

Micros us_from_seconds(double s) { return std::llround(s * 1e6); }

Micros propagation_us(double distance_m, double speed_mps) {
    if (distance_m <= 0) return 0;
    return std::llround(distance_m / speed_mps * 1e6);
}

Micros tx_us(std::size_t bytes, double per_byte_s) {
    return std::llround(static_cast<double>(bytes) * per_byte_s * 1e6);
}

double place_coord(double lo, double hi, std::uint64_t r) {
    double x = lo + u01(r) * (hi - lo);
    if (x >= hi) x = std::nextafter(hi, lo);
    return x;
}

Bytes payload_for(std::uint64_t seed, std::uint64_t message_id) {
    Bytes p(PAYLOAD_SIZE);
    for (std::size_t k = 0; k < PAYLOAD_SIZE / 8; ++k)
        put_u64_be(p.data() + k * 8, mix(seed, "payload", message_id, k + 1));
    return p;
}

void validate_delay_model(const DelayModel& m) {
    if (m.propagation_speed <= 0)
        fail(Errc::invalid_scenario, "propagation_speed must be positive");
    for (double v : {m.per_byte_tx, m.rsu_proc, m.ca_decrypt_proc, m.ca_verify_proc,
                     m.escrow_rtt_base})
        if (v < 0 || !std::isfinite(v))
            fail(Errc::invalid_scenario, "delay model parameters must be non-negative");
}

}  // namespace

bool event_after(const Event& a, const Event& b) {
    return std::tuple(a.time, static_cast<int>(a.kind), a.message_id) >
           std::tuple(b.time, static_cast<int>(b.kind), b.message_id);
}

std::string_view sweep_axis_name(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::vehicles: return "vehicles";
        case SweepAxis::messages: return "messages";
        case SweepAxis::attackers: return "attackers";
    }
    return "?";
}

World build_world(const ScenarioConfig& config) {
    if (config.regions.empty()) fail(Errc::invalid_scenario, "at least one region required");
    validate_delay_model(config.delay_model);
    if (config.message_interval_us < 0)
        fail(Errc::invalid_scenario, "message_interval_us must be non-negative");

    std::uint64_t seed = config.seed;
    std::size_t n_regions = config.regions.size();

    std::vector<pki::Region> regions(n_regions);
    for (std::size_t i = 0; i < n_regions; ++i) {
        const RegionSpec& spec = config.regions[i];
        regions[i].id = ca_id_for(seed, "ca.region", i);
        regions[i].bounds = pki::Rect{spec.x0, spec.y0, spec.x1, spec.y1};
        regions[i].group_key =
            crypto::derive_symmetric_key(seed32(seed, "region.ak", i), KEY_LABEL);
        regions[i].ca_keys = crypto::generate_keypair(seed32(seed, "region.ca", i));
    }

    World world;
    world.config = config;
    world.map = pki::RegionMap(std::move(regions));  // validates disjointness
    world.home_ca = pki::CaStore(ca_id_for(seed, "ca.home", 0));
    for (const pki::Region& r : world.map.regions()) world.home_ca.authorize_ca(r.id);

    std::uint32_t n = config.vehicles;
    std::uint64_t forged_messages = 0;
    for (const AttackerSpec& a : config.attackers) forged_messages += a.spoofs.size();
    if (n == 0 && (config.accident_messages > 0 || forged_messages > 0))
        fail(Errc::invalid_scenario, "messages configured but no vehicles exist");

    world.vehicles.reserve(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        VehicleState v;
        v.id = vehicle_id_for(seed, i);
        v.region = i % static_cast<std::uint32_t>(n_regions);
        const pki::Rect& b = world.map.at(v.region).bounds;
        v.x = place_coord(b.x0, b.x1, mix(seed, "vehicle.x", i));
        v.y = place_coord(b.y0, b.y1, mix(seed, "vehicle.y", i));
        const pki::Registration& reg = world.home_ca.register_vehicle(
            v.id, pki::CertificateKind::ValidCertificate, seed32(seed, "vehicle.key", i));
        v.key = reg.vehicle_key;
        world.vehicles.push_back(std::move(v));
    }

    for (std::uint32_t idx : config.flagged) {
        if (idx >= n)
            fail(Errc::invalid_scenario, "flagged vehicle " + std::to_string(idx) +
                                             " is not a declared vehicle");
        world.home_ca.flag_adversary(world.vehicles[idx].id);
    }

    // Group keys through the certificate gate: AC holders get none.
    for (VehicleState& v : world.vehicles) {
        try {
            v.group_key = world.home_ca.issue_group_key(world.map.at(v.region), v.id);
        } catch (const Error& e) {
            if (e.code() != Errc::certificate_revoked) throw;
            v.group_key.reset();
        }
    }

    for (const AttackerSpec& a : config.attackers) {
        if (a.vehicle >= n)
            fail(Errc::invalid_scenario, "attacker vehicle " + std::to_string(a.vehicle) +
                                             " is not a declared vehicle");
        if (a.spoofs.empty())
            fail(Errc::invalid_scenario, "attacker " + std::to_string(a.vehicle) +
                                             " spoofs no identities");
        for (std::uint32_t s : a.spoofs) {
            if (s >= n)
                fail(Errc::invalid_scenario, "spoofed identity " + std::to_string(s) +
                                                 " is not a registered vehicle");
            if (s == a.vehicle)
                fail(Errc::invalid_scenario,
                     "attacker " + std::to_string(a.vehicle) + " cannot spoof itself");
        }
    }

    if (config.cross_region_move) {
        const MoveSpec& m = *config.cross_region_move;
        if (m.vehicle >= n)
            fail(Errc::invalid_scenario, "moved vehicle " + std::to_string(m.vehicle) +
                                             " is not a declared vehicle");
        if (m.to_region >= n_regions || m.from_region >= n_regions)
            fail(Errc::invalid_scenario, "move references an unknown region");
        if (m.from_region == m.to_region)
            fail(Errc::invalid_scenario, "move must change region");
        if (world.vehicles[m.vehicle].region != m.from_region)
            fail(Errc::invalid_scenario,
                 "vehicle " + std::to_string(m.vehicle) + " does not start in region " +
                     std::to_string(m.from_region));
        if (m.time_us < 0) fail(Errc::invalid_scenario, "move time must be non-negative");

        VehicleState moved = world.vehicles[m.vehicle];
        moved.region = m.to_region;
        const pki::Rect& b = world.map.at(m.to_region).bounds;
        moved.x = place_coord(b.x0, b.x1, mix(seed, "vehicle.moved.x", m.vehicle));
        moved.y = place_coord(b.y0, b.y1, mix(seed, "vehicle.moved.y", m.vehicle));
        try {
            moved.group_key =
                world.home_ca.issue_group_key(world.map.at(m.to_region), moved.id);
        } catch (const Error& e) {
            if (e.code() != Errc::certificate_revoked) throw;
            moved.group_key.reset();
        }
        world.moved_state = std::move(moved);
    }

    for (std::size_t i = 0; i < n_regions; ++i) {
        const RegionSpec& spec = config.regions[i];
        if (spec.rsus.empty()) {
            const pki::Rect& b = world.map.at(i).bounds;
            world.rsus.push_back({static_cast<std::uint32_t>(i), b.cx(), b.cy()});
        } else {
            for (auto [x, y] : spec.rsus) {
                if (!world.map.at(i).bounds.contains(x, y))
                    fail(Errc::invalid_scenario,
                         "rsu (" + std::to_string(x) + ", " + std::to_string(y) +
                             ") lies outside region " + std::to_string(i));
                world.rsus.push_back({static_cast<std::uint32_t>(i), x, y});
            }
        }
    }

    std::uint64_t next_id = 1;
    std::uint64_t slot = 0;
    for (std::uint32_t j = 0; j < config.accident_messages; ++j) {
        world.plan.push_back({next_id++, static_cast<Micros>(slot) * config.message_interval_us,
                              j % n, std::nullopt});
        ++slot;
    }
    for (const AttackerSpec& a : config.attackers) {
        for (std::uint32_t s : a.spoofs) {
            world.plan.push_back({next_id++,
                                  static_cast<Micros>(slot) * config.message_interval_us,
                                  a.vehicle, s});
            ++slot;
        }
    }
    if (config.cross_region_move)
        world.plan.push_back({next_id++, config.cross_region_move->time_us,
                              config.cross_region_move->vehicle, std::nullopt});

    return world;
}

PhaseDelays charge_delays(const MessageTrace& trace, const DelayModel& model) {
    auto incomplete = [&](const char* what) {
        fail(Errc::trace_incomplete, std::string(what) + " missing for message " +
                                         std::to_string(trace.message_id));
    };
    if (!trace.born) incomplete("birth stamp");
    if (!trace.arrive_rsu || !trace.rsu_done) incomplete("RSU stamps");

    PhaseDelays d;
    d.t1 = propagation_us(trace.distance_to_rsu, model.propagation_speed) +
           tx_us(trace.encoded_size, model.per_byte_tx);
    d.t2 = *trace.rsu_done - *trace.arrive_rsu;
    if (trace.faulted) return d;

    if (!trace.arrive_ca || !trace.open_done) incomplete("local CA stamps");
    d.t3 = *trace.open_done - *trace.rsu_done;
    if (trace.open_failed) return d;
    if (trace.escrow_failed_at) {
        d.t4 = *trace.escrow_failed_at - *trace.open_done;
        return d;
    }

    if (!trace.verdict) incomplete("verdict stamp");
    d.t4 = *trace.verdict - *trace.open_done;
    return d;
}

namespace {

struct EventAfter {
    bool operator()(const Event& a, const Event& b) const { return event_after(a, b); }
};

// Sender state as of a given simulated time. After the scripted move the
// vehicle sits in the destination region with that region's group key but
// still seals its identity envelope to the old region's CA.
struct SenderView {
    const VehicleState* state = nullptr;
    ByteView envelope_ca_public;
};

SenderView sender_at(const World& world, std::uint32_t vehicle, Micros time) {
    const VehicleState& base = world.vehicles[vehicle];
    const auto& move = world.config.cross_region_move;
    if (move && move->vehicle == vehicle && time >= move->time_us && world.moved_state)
        return {&*world.moved_state,
                ByteView(world.map.at(base.region).ca_keys.public_key)};
    return {&base, ByteView(world.map.at(base.region).ca_keys.public_key)};
}

struct MessageContext {
    PlannedMessage plan;
    bool honest = true;
    pki::VehicleId claimed;
    protocol::SafetyMessage msg;
    Bytes encoded;
    std::uint32_t region = 0;  // region whose RSU/CA handle the message
    std::uint32_t rsu = 0;     // flat RSU index
    MessageTrace trace;
    protocol::ObuIdPlain plain;
    crypto::SymmetricKey escrowed;
    std::optional<protocol::RsuVerdict> rsu_verdict;
    std::optional<protocol::DetectionVerdict> detection;
    std::string error;
    TerminalKind terminal = TerminalKind::Verdict;
    bool terminated = false;
};

struct Runner {
    const World& world;
    const RunOptions& options;
    const DelayModel& model;

    Micros rsu_proc_us, ca_decrypt_us, ca_verify_us, escrow_rtt_us;
    std::vector<Micros> rsu_busy;                 // per flat RSU
    std::vector<Micros> ca_busy;                  // per region
    std::vector<std::vector<std::size_t>> region_rsus;
    std::vector<std::map<pki::VehicleId, crypto::SymmetricKey>> key_cache;
    std::vector<MessageContext> ctx;              // index = message_id - 1
    std::priority_queue<Event, std::vector<Event>, EventAfter> queue;
    std::vector<FaultReport> fault_reports;

    Runner(const World& w, const RunOptions& o)
        : world(w), options(o), model(w.config.delay_model) {
        rsu_proc_us = us_from_seconds(model.rsu_proc);
        ca_decrypt_us = us_from_seconds(model.ca_decrypt_proc);
        ca_verify_us = us_from_seconds(model.ca_verify_proc);
        escrow_rtt_us = us_from_seconds(model.escrow_rtt_base);
        rsu_busy.assign(world.rsus.size(), 0);
        ca_busy.assign(world.map.size(), 0);
        key_cache.resize(world.map.size());
        region_rsus.resize(world.map.size());
        for (std::size_t i = 0; i < world.rsus.size(); ++i)
            region_rsus[world.rsus[i].region].push_back(i);
        ctx.resize(world.plan.size());
    }

    MessageContext& context(std::uint64_t message_id) { return ctx[message_id - 1]; }

    void terminate(MessageContext& c, TerminalKind kind, std::string error = {}) {
        c.terminal = kind;
        c.error = std::move(error);
        c.terminated = true;
    }

    std::size_t nearest_rsu(std::uint32_t region, double x, double y, double& distance) const {
        std::size_t best = region_rsus[region].front();
        double best_d2 = -1;
        for (std::size_t i : region_rsus[region]) {
            double dx = world.rsus[i].x - x;
            double dy = world.rsus[i].y - y;
            double d2 = dx * dx + dy * dy;
            if (best_d2 < 0 || d2 < best_d2) {
                best_d2 = d2;
                best = i;
            }
        }
        distance = std::sqrt(best_d2);
        return best;
    }

    void on_born(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        SenderView view = sender_at(world, c.plan.sender, ev.time);
        const VehicleState& sender = *view.state;

        c.honest = !c.plan.spoofed_victim.has_value();
        c.claimed = c.honest ? sender.id : world.vehicles[*c.plan.spoofed_victim].id;

        if (!sender.group_key) {
            // Certificate gate: no AK, no broadcast.
            terminate(c, TerminalKind::Rejected, "rejected_no_group_key");
            return;
        }

        Bytes payload = payload_for(world.config.seed, c.plan.id);
        crypto::Seed nonce = seed32(world.config.seed, "nonce", c.plan.id);
        if (c.honest) {
            c.msg = protocol::build_safety_message(payload, *sender.group_key, sender.id,
                                                   sender.key, world.home_ca.id(),
                                                   view.envelope_ca_public, nonce);
        } else {
            c.msg = protocol::forge_sybil_message(payload, *sender.group_key, c.claimed,
                                                  sender.key, world.home_ca.id(),
                                                  view.envelope_ca_public, nonce);
        }
        c.encoded = protocol::encode_message(c.msg);
        c.region = sender.region;

        double distance = 0;
        c.rsu = static_cast<std::uint32_t>(nearest_rsu(c.region, sender.x, sender.y, distance));
        c.trace.message_id = c.plan.id;
        c.trace.distance_to_rsu = distance;
        c.trace.encoded_size = c.encoded.size();
        c.trace.born = ev.time;

        Micros t1 = propagation_us(distance, model.propagation_speed) +
                    tx_us(c.encoded.size(), model.per_byte_tx);
        queue.push({ev.time + t1, EventKind::ArriveRsu, c.plan.id, c.rsu});
    }

    void on_arrive_rsu(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        c.trace.arrive_rsu = ev.time;
        Micros start = std::max(ev.time, rsu_busy[c.rsu]);
        Micros done = start + rsu_proc_us;
        rsu_busy[c.rsu] = done;
        queue.push({done, EventKind::RsuDone, c.plan.id, c.rsu});
    }

    void on_rsu_done(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        c.trace.rsu_done = ev.time;
        c.rsu_verdict = protocol::rsu_check(c.msg, world.map.at(c.region).group_key);
        if (*c.rsu_verdict == protocol::RsuVerdict::Fault) {
            queue.push({ev.time, EventKind::FaultReported, c.plan.id, c.rsu});
            return;
        }
        const pki::Rect& b = world.map.at(c.region).bounds;
        double dx = world.rsus[c.rsu].x - b.cx();
        double dy = world.rsus[c.rsu].y - b.cy();
        Micros link = propagation_us(std::sqrt(dx * dx + dy * dy), model.propagation_speed);
        queue.push({ev.time + link, EventKind::ArriveLocalCa, c.plan.id, c.region});
    }

    void on_arrive_ca(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        c.trace.arrive_ca = ev.time;
        Micros start = std::max(ev.time, ca_busy[c.region]);
        Micros open_done = start + ca_decrypt_us;
        ca_busy[c.region] = open_done;
        c.trace.open_done = open_done;

        try {
            c.plain = protocol::open_obu_id(c.msg.obu_id,
                                            world.map.at(c.region).ca_keys.secret_key);
        } catch (const Error& e) {
            if (e.code() != Errc::decryption_failed && e.code() != Errc::malformed_plaintext)
                throw;
            c.trace.open_failed = true;
            terminate(c, TerminalKind::EscrowError, "open_failed");
            return;
        }

        auto& cache = key_cache[c.region];
        auto hit = cache.find(c.plain.vehicle);
        if (world.config.key_cache && hit != cache.end()) {
            // Cached key: the CA keeps the server and verifies immediately,
            // skipping the escrow round trip.
            c.escrowed = hit->second;
            Micros verify_done = open_done + ca_verify_us;
            ca_busy[c.region] = verify_done;
            queue.push({verify_done, EventKind::VerdictReady, c.plan.id, c.region});
            return;
        }
        queue.push({open_done + escrow_rtt_us / 2, EventKind::EscrowRequest, c.plan.id, 0});
    }

    void on_escrow_request(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        try {
            c.escrowed = world.home_ca.escrow_key(world.map.at(c.region).id, c.plain.vehicle);
        } catch (const Error& e) {
            if (e.code() != Errc::not_registered && e.code() != Errc::unauthorized_ca) throw;
            c.trace.escrow_failed_at = ev.time;
            terminate(c, TerminalKind::EscrowError,
                      std::string("escrow_failed_") + std::string(errc_name(e.code())));
            return;
        }
        queue.push({*c.trace.open_done + escrow_rtt_us, EventKind::EscrowReply, c.plan.id,
                    c.region});
    }

    void on_escrow_reply(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        if (world.config.key_cache) key_cache[c.region][c.plain.vehicle] = c.escrowed;
        Micros start = std::max(ev.time, ca_busy[c.region]);
        Micros verify_done = start + ca_verify_us;
        ca_busy[c.region] = verify_done;
        queue.push({verify_done, EventKind::VerdictReady, c.plan.id, c.region});
    }

    void on_verdict_ready(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        c.trace.verdict = ev.time;
        protocol::DetectionResult result =
            protocol::detect_sybil(c.plain, c.msg.outer_digest, c.escrowed);
        c.detection = result.verdict;
        terminate(c, TerminalKind::Verdict);
    }

    void on_fault_reported(const Event& ev) {
        MessageContext& c = context(ev.message_id);
        c.trace.faulted = true;
        fault_reports.push_back({ev.actor, crypto::sha256(c.encoded)});
        terminate(c, TerminalKind::Fault);
    }

    ScenarioMetrics finish() {
        ScenarioMetrics metrics;
        metrics.fault_reports = std::move(fault_reports);
        metrics.records.reserve(ctx.size());
        for (MessageContext& c : ctx) {
            MessageRecord rec;
            rec.message_id = c.plan.id;
            rec.claimed = c.claimed;
            rec.honest = c.honest;
            rec.rsu_verdict = c.rsu_verdict;
            rec.detection = c.detection;
            rec.error = c.error;
            rec.terminal = c.terminal;
            if (c.terminal != TerminalKind::Rejected)
                rec.delays = charge_delays(c.trace, model);
            if (options.capture) {
                rec.encoded = c.encoded;
                rec.region = c.region;
            }

            switch (c.terminal) {
                case TerminalKind::Verdict: ++metrics.verdicts; break;
                case TerminalKind::Fault: ++metrics.faults; break;
                case TerminalKind::EscrowError: ++metrics.escrow_errors; break;
                case TerminalKind::Rejected: ++metrics.rejected_sends; break;
            }
            if (c.terminal != TerminalKind::Rejected) {
                ++metrics.messages_born;
                Micros total = rec.delays.total();
                metrics.sum_total_us += total;
                metrics.max_total_us = std::max(metrics.max_total_us, total);
            }
            if (c.detection == protocol::DetectionVerdict::SybilDetected) {
                ++metrics.detections;
                if (c.honest) ++metrics.false_positives;
            }
            metrics.records.push_back(std::move(rec));
        }
        return metrics;
    }
};

}  // namespace

ScenarioMetrics run(const World& world, const RunOptions& options) {
    Runner runner(world, options);
    for (const PlannedMessage& m : world.plan) {
        runner.ctx[m.id - 1].plan = m;
        runner.queue.push({m.born, EventKind::MessageBorn, m.id, m.sender});
    }
    while (!runner.queue.empty()) {
        Event ev = runner.queue.top();
        runner.queue.pop();
        switch (ev.kind) {
            case EventKind::MessageBorn: runner.on_born(ev); break;
            case EventKind::ArriveRsu: runner.on_arrive_rsu(ev); break;
            case EventKind::RsuDone: runner.on_rsu_done(ev); break;
            case EventKind::ArriveLocalCa: runner.on_arrive_ca(ev); break;
            case EventKind::EscrowRequest: runner.on_escrow_request(ev); break;
            case EventKind::EscrowReply: runner.on_escrow_reply(ev); break;
            case EventKind::VerdictReady: runner.on_verdict_ready(ev); break;
            case EventKind::FaultReported: runner.on_fault_reported(ev); break;
        }
    }
    return runner.finish();
}

std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis,
                            const std::vector<std::uint64_t>& values) {
    if (values.empty()) fail(Errc::config_error, "sweep values must be non-empty");
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] <= values[i - 1])
            fail(Errc::config_error, "sweep values must be strictly ascending");

    std::vector<SweepRow> rows;
    rows.reserve(values.size());
    for (std::uint64_t value : values) {
        ScenarioConfig cfg = base;
        cfg.seed = base.seed ^ value;
        cfg.sweep.reset();
        try {
            switch (axis) {
                case SweepAxis::vehicles:
                    if (value > 0xffffffffull)
                        fail(Errc::config_error, "vehicle count out of range");
                    cfg.vehicles = static_cast<std::uint32_t>(value);
                    break;
                case SweepAxis::messages:
                    if (value > 0xffffffffull)
                        fail(Errc::config_error, "message count out of range");
                    cfg.accident_messages = static_cast<std::uint32_t>(value);
                    break;
                case SweepAxis::attackers:
                    if (value > base.attackers.size())
                        fail(Errc::config_error,
                             "config declares only " + std::to_string(base.attackers.size()) +
                                 " attackers");
                    cfg.attackers.assign(base.attackers.begin(),
                                         base.attackers.begin() +
                                             static_cast<std::ptrdiff_t>(value));
                    break;
            }
            World world = build_world(cfg);
            ScenarioMetrics m = run(world);
            rows.push_back({axis, value, m.sum_total_us, m.messages_born, m.max_total_us,
                            m.detections, m.false_positives, m.faults, m.escrow_errors});
        } catch (const Error& e) {
            fail(e.code(), "sweep point " + std::string(sweep_axis_name(axis)) + "=" +
                               std::to_string(value) + ": " + e.what());
        }
    }
    return rows;
}

std::string format_mean_us(std::int64_t sum, std::uint64_t count) {
    if (count == 0) return "0.000";
    std::int64_t milli =
        (sum * 1000 + static_cast<std::int64_t>(count) / 2) / static_cast<std::int64_t>(count);
    std::string frac = std::to_string(milli % 1000);
    return std::to_string(milli / 1000) + "." + std::string(3 - frac.size(), '0') + frac;
}

std::string metrics_csv(const ScenarioMetrics& metrics) {
    std::string out =
        "message_id,claimed_id_hex,honest,rsu_verdict,detection,t1_us,t2_us,t3_us,t4_us,"
        "total_us,error\n";
    for (const MessageRecord& r : metrics.records) {
        out += std::to_string(r.message_id);
        out += ',';
        out += hex_encode(r.claimed.id);
        out += ',';
        out += r.honest ? '1' : '0';
        out += ',';
        if (r.rsu_verdict) out += protocol::rsu_verdict_name(*r.rsu_verdict);
        out += ',';
        if (r.detection) out += protocol::detection_verdict_name(*r.detection);
        out += ',';
        out += std::to_string(r.delays.t1) + ',' + std::to_string(r.delays.t2) + ',' +
               std::to_string(r.delays.t3) + ',' + std::to_string(r.delays.t4) + ',' +
               std::to_string(r.delays.total());
        out += ',';
        out += r.error;
        out += '\n';
    }
    return out;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
    std::string out =
        "axis,value,mean_total_us,max_total_us,detections,false_positives,faults,"
        "escrow_errors\n";
    for (const SweepRow& r : rows) {
        out += std::string(sweep_axis_name(r.axis)) + ',' + std::to_string(r.value) + ',';
        out += format_mean_us(r.sum_total_us, r.born) + ',';
        out += std::to_string(r.max_total_us) + ',' + std::to_string(r.detections) + ',' +
               std::to_string(r.false_positives) + ',' + std::to_string(r.faults) + ',' +
               std::to_string(r.escrow_errors) + '\n';
    }
    return out;
}

std::string summary_text(const ScenarioMetrics& m) {
    std::string out;
    out += "messages_born=" + std::to_string(m.messages_born) + '\n';
    out += "verdicts=" + std::to_string(m.verdicts) + '\n';
    out += "faults=" + std::to_string(m.faults) + '\n';
    out += "escrow_errors=" + std::to_string(m.escrow_errors) + '\n';
    out += "rejected_sends=" + std::to_string(m.rejected_sends) + '\n';
    out += "detections=" + std::to_string(m.detections) + '\n';
    out += "false_positives=" + std::to_string(m.false_positives) + '\n';
    out += "mean_total_us=" + format_mean_us(m.sum_total_us, m.messages_born) + '\n';
    out += "max_total_us=" + std::to_string(m.max_total_us) + '\n';
    for (const MessageRecord& r : m.records) {
        if (r.detection == protocol::DetectionVerdict::SybilDetected)
            out += "sybil_detected message_id=" + std::to_string(r.message_id) +
                   " claimed_id=" + hex_encode(r.claimed.id) + '\n';
        else if (!r.error.empty())
            out += "error message_id=" + std::to_string(r.message_id) + " error=" + r.error +
                   '\n';
    }
    return out;
}

}  // namespace vanet::sim
