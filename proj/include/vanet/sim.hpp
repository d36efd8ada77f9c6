#ifndef VANET_SIM_HPP
#define VANET_SIM_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "vanet/pki.hpp"
#include "vanet/protocol.hpp"

namespace vanet::sim {

// Simulated time is fixed-point microseconds so event ordering and every
// delay sum are exact and platform-independent.
using Micros = std::int64_t;

enum class EventKind : std::uint8_t {
    MessageBorn,
    ArriveRsu,
    RsuDone,
    ArriveLocalCa,
    EscrowRequest,
    EscrowReply,
    VerdictReady,
    FaultReported,
};

struct Event {
    Micros time = 0;
    EventKind kind = EventKind::MessageBorn;
    std::uint64_t message_id = 0;
    std::uint64_t actor = 0;
};

// Processing order: non-decreasing time, ties broken by (kind, message_id).
bool event_after(const Event& a, const Event& b);

// Service and link parameters. Each RSU, each local CA and the home CA is
// a single FIFO server; the home CA's escrow lookup itself is charged as
// part of escrow_rtt_base.
struct DelayModel {
    double propagation_speed = 3.0e8;  // meters/second
    double per_byte_tx = 2.0e-6;       // seconds/byte
    double rsu_proc = 2.0e-4;          // seconds/message
    double ca_decrypt_proc = 1.0e-3;   // seconds/message
    double ca_verify_proc = 5.0e-4;    // seconds/message
    double escrow_rtt_base = 1.0e-2;   // seconds, CA_i <-> CA_h round trip
};

struct PhaseDelays {
    Micros t1 = 0;  // vehicle -> RSU broadcast
    Micros t2 = 0;  // RSU queue + processing
    Micros t3 = 0;  // RSU -> local CA link + queue + envelope opening
    Micros t4 = 0;  // escrow round trip + verify queue + final verify

    Micros total() const { return t1 + t2 + t3 + t4; }
};

struct RegionSpec {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    std::vector<std::pair<double, double>> rsus;  // defaults to the centroid
};

struct AttackerSpec {
    std::uint32_t vehicle = 0;                // vehicle index of the insider
    std::vector<std::uint32_t> spoofs;        // victims, one forged message each
};

struct MoveSpec {
    std::uint32_t vehicle = 0;
    std::uint32_t from_region = 0;
    std::uint32_t to_region = 0;
    Micros time_us = 0;
};

enum class SweepAxis { vehicles, messages, attackers };

std::string_view sweep_axis_name(SweepAxis axis);

struct SweepSpec {
    SweepAxis axis = SweepAxis::vehicles;
    std::vector<std::uint64_t> values;
};

struct ScenarioConfig {
    std::uint64_t seed = 1;
    std::vector<RegionSpec> regions;
    std::uint32_t vehicles = 0;
    std::uint32_t accident_messages = 5;  // default per the accident-report setup
    std::vector<AttackerSpec> attackers;
    std::vector<std::uint32_t> flagged;   // AC-flagged before key issuance
    bool key_cache = false;
    Micros message_interval_us = 0;       // birth spacing; 0 = simultaneous
    DelayModel delay_model;
    std::optional<MoveSpec> cross_region_move;
    std::optional<SweepSpec> sweep;
};

// ---------------------------------------------------------------------------
// World: the built scenario. Immutable during run(); runs are repeatable.

struct VehicleState {
    pki::VehicleId id;
    std::uint32_t region = 0;
    double x = 0, y = 0;
    crypto::SymmetricKey key;  // SK_A, also escrowed at the home CA
    std::optional<crypto::SymmetricKey> group_key;  // absent iff denied by the gate
};

struct RsuInfo {
    std::uint32_t region = 0;
    double x = 0, y = 0;
};

struct PlannedMessage {
    std::uint64_t id = 0;
    Micros born = 0;
    std::uint32_t sender = 0;
    std::optional<std::uint32_t> spoofed_victim;  // set for forged messages
};

struct World {
    ScenarioConfig config;
    pki::RegionMap map;
    pki::CaStore home_ca{pki::CaId{}};
    std::vector<VehicleState> vehicles;
    std::vector<RsuInfo> rsus;  // flat; regions hold >= 1 RSU each
    std::vector<PlannedMessage> plan;

    // Post-move state for the scripted cross-region vehicle: the new
    // position and re-issued group key; the identity envelope keeps the
    // old region's CA public key (the documented stale-credential failure).
    std::optional<VehicleState> moved_state;
};

// Validates the region map (Errc::invalid_region_map), registers every
// vehicle at the home CA, applies AC flags, issues group keys through the
// certificate gate, places RSUs and lays out the message plan.
// Scenario inconsistencies throw Errc::invalid_scenario.
World build_world(const ScenarioConfig& config);

// ---------------------------------------------------------------------------
// Per-message bookkeeping and scenario metrics.

enum class TerminalKind { Verdict, Fault, EscrowError, Rejected };

struct MessageTrace {
    std::uint64_t message_id = 0;
    double distance_to_rsu = 0;  // meters
    std::size_t encoded_size = 0;
    std::optional<Micros> born, arrive_rsu, rsu_done, arrive_ca, open_done, verdict;
    std::optional<Micros> escrow_failed_at;  // terminal at the home CA
    bool faulted = false;      // terminal at rsu_done
    bool open_failed = false;  // terminal at open_done
};

// Eq-style decomposition from a completed trace: t1 from the broadcast
// formula (distance / speed + size * per-byte), t2-t4 from the stamps, so
// total always telescopes to the terminal stamp minus birth.
// Throws Errc::trace_incomplete when the trace lacks a terminal stamp.
PhaseDelays charge_delays(const MessageTrace& trace, const DelayModel& model);

struct MessageRecord {
    std::uint64_t message_id = 0;
    pki::VehicleId claimed;
    bool honest = true;
    std::optional<protocol::RsuVerdict> rsu_verdict;
    std::optional<protocol::DetectionVerdict> detection;
    PhaseDelays delays;
    std::string error;  // empty unless the message ended in an error state
    TerminalKind terminal = TerminalKind::Verdict;

    // Filled only when RunOptions::capture is set (oracle replay support).
    Bytes encoded;
    std::uint32_t region = 0;  // region whose RSU/CA handled the message
};

struct FaultReport {
    std::uint64_t rsu = 0;
    ByteArray<32> message_hash{};
};

struct ScenarioMetrics {
    std::vector<MessageRecord> records;  // in message-id order
    std::vector<FaultReport> fault_reports;

    std::uint64_t messages_born = 0;
    std::uint64_t verdicts = 0;
    std::uint64_t faults = 0;
    std::uint64_t escrow_errors = 0;
    std::uint64_t detections = 0;
    std::uint64_t false_positives = 0;  // honest messages ending SybilDetected
    std::uint64_t rejected_sends = 0;   // denied pre-broadcast by the gate

    std::int64_t sum_total_us = 0;  // over born messages
    Micros max_total_us = 0;
};

struct RunOptions {
    bool capture = false;  // keep wire bytes per record for oracle replay
};

// Deterministic event loop: identical config -> byte-identical CSV.
// Every born message reaches exactly one terminal state, so
// messages_born == verdicts + faults + escrow_errors.
ScenarioMetrics run(const World& world, const RunOptions& options = {});

struct SweepRow {
    SweepAxis axis = SweepAxis::vehicles;
    std::uint64_t value = 0;
    std::int64_t sum_total_us = 0;
    std::uint64_t born = 0;
    Micros max_total_us = 0;
    std::uint64_t detections = 0;
    std::uint64_t false_positives = 0;
    std::uint64_t faults = 0;
    std::uint64_t escrow_errors = 0;
};

// One run per value with per-point seed = base.seed XOR value; rows keep
// input order. Throws Errc::config_error on an empty or non-ascending
// value list; per-run failures are rethrown tagged with the axis value.
std::vector<SweepRow> sweep(const ScenarioConfig& base, SweepAxis axis,
                            const std::vector<std::uint64_t>& values);

// Exact decimal mean (3 places, integer arithmetic) used by the CSVs.
std::string format_mean_us(std::int64_t sum, std::uint64_t count);

// `message_id,claimed_id_hex,honest,rsu_verdict,detection,t1_us,t2_us,t3_us,t4_us,total_us,error`
std::string metrics_csv(const ScenarioMetrics& metrics);

// `axis,value,mean_total_us,max_total_us,detections,false_positives,faults,escrow_errors`
std::string sweep_csv(const std::vector<SweepRow>& rows);

// Human-readable run summary; lists every SybilDetected with the claimed id.
std::string summary_text(const ScenarioMetrics& metrics);

}  // namespace vanet::sim

#endif  // VANET_SIM_HPP
