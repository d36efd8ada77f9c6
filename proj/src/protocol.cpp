#include "vanet/protocol.hpp"

#include <algorithm>

#include "vanet/errors.hpp"

namespace vanet::protocol {

namespace {

Bytes inner_digest_input(const pki::VehicleId& vehicle, const crypto::Digest& outer_digest) {
    Bytes input;
    input.reserve(OBU_ID_PLAIN_SIZE);
    append(input, vehicle.id);
    append(input, outer_digest.bytes);
    return input;
}

SafetyMessage build_with_inner_key(ByteView payload, const crypto::SymmetricKey& group_key,
                                   const pki::VehicleId& claimed,
                                   const crypto::SymmetricKey& inner_key,
                                   const pki::CaId& home_ca, ByteView local_ca_public,
                                   const crypto::Seed& nonce_seed) {
    if (payload.size() > MAX_PAYLOAD)
        fail(Errc::message_too_large,
             "payload exceeds " + std::to_string(MAX_PAYLOAD) + " bytes");
    SafetyMessage msg;
    msg.payload.assign(payload.begin(), payload.end());
    msg.outer_digest = crypto::keyed_digest(group_key, payload);
    msg.home_ca = home_ca;
    msg.obu_id = build_obu_id(claimed, inner_key, msg.outer_digest, local_ca_public, nonce_seed);
    return msg;
}

}  // namespace

crypto::Ciphertext build_obu_id(const pki::VehicleId& vehicle,
                                const crypto::SymmetricKey& vehicle_key,
                                const crypto::Digest& outer_digest, ByteView local_ca_public,
                                const crypto::Seed& nonce_seed) {
    crypto::Digest inner =
        crypto::keyed_digest(vehicle_key, inner_digest_input(vehicle, outer_digest));
    Bytes plain;
    plain.reserve(OBU_ID_PLAIN_SIZE);
    append(plain, vehicle.id);
    append(plain, inner.bytes);
    return crypto::encrypt(local_ca_public, plain, nonce_seed);
}

SafetyMessage build_safety_message(ByteView payload, const crypto::SymmetricKey& group_key,
                                   const pki::VehicleId& vehicle,
                                   const crypto::SymmetricKey& vehicle_key,
                                   const pki::CaId& home_ca, ByteView local_ca_public,
                                   const crypto::Seed& nonce_seed) {
    return build_with_inner_key(payload, group_key, vehicle, vehicle_key, home_ca,
                                local_ca_public, nonce_seed);
}

SafetyMessage forge_sybil_message(ByteView payload, const crypto::SymmetricKey& group_key,
                                  const pki::VehicleId& claimed_vehicle,
                                  const crypto::SymmetricKey& attacker_key,
                                  const pki::CaId& home_ca, ByteView local_ca_public,
                                  const crypto::Seed& nonce_seed) {
    return build_with_inner_key(payload, group_key, claimed_vehicle, attacker_key, home_ca,
                                local_ca_public, nonce_seed);
}

RsuVerdict rsu_check(const SafetyMessage& msg, const crypto::SymmetricKey& group_key) {
    crypto::Digest recomputed = crypto::keyed_digest(group_key, msg.payload);
    return recomputed == msg.outer_digest ? RsuVerdict::IntegrityOk : RsuVerdict::Fault;
}

ObuIdPlain open_obu_id(const crypto::Ciphertext& ct, ByteView local_ca_secret) {
    Bytes plain = crypto::decrypt(local_ca_secret, ct);
    if (plain.size() != OBU_ID_PLAIN_SIZE)
        fail(Errc::malformed_plaintext, "identity envelope is " + std::to_string(plain.size()) +
                                            " bytes, expected " +
                                            std::to_string(OBU_ID_PLAIN_SIZE));
    ObuIdPlain out;
    std::copy_n(plain.begin(), out.vehicle.id.size(), out.vehicle.id.begin());
    std::copy_n(plain.begin() + out.vehicle.id.size(), out.inner_digest.bytes.size(),
                out.inner_digest.bytes.begin());
    return out;
}

DetectionResult detect_sybil(const ObuIdPlain& plain, const crypto::Digest& outer_digest,
                             const crypto::SymmetricKey& escrowed_key) {
    DetectionResult result;
    result.vehicle = plain.vehicle;
    result.carried_inner = plain.inner_digest;
    result.recomputed_inner =
        crypto::keyed_digest(escrowed_key, inner_digest_input(plain.vehicle, outer_digest));
    result.verdict = result.recomputed_inner == result.carried_inner
                         ? DetectionVerdict::Legitimate
                         : DetectionVerdict::SybilDetected;
    return result;
}

Bytes encode_message(const SafetyMessage& msg) {
    if (msg.payload.size() > MAX_PAYLOAD)
        fail(Errc::message_too_large,
             "payload exceeds " + std::to_string(MAX_PAYLOAD) + " bytes");
    std::size_t ct_field = msg.obu_id.recipient_hint.size() + msg.obu_id.bytes.size();
    if (ct_field > 0xffff)
        fail(Errc::message_too_large, "ciphertext exceeds the wire length field");

    Bytes out;
    out.reserve(2 + msg.payload.size() + crypto::DIGEST_SIZE + msg.home_ca.id.size() + 2 +
                ct_field);
    put_u16_be(out, static_cast<std::uint16_t>(msg.payload.size()));
    append(out, msg.payload);
    append(out, msg.outer_digest.bytes);
    append(out, msg.home_ca.id);
    put_u16_be(out, static_cast<std::uint16_t>(ct_field));
    append(out, msg.obu_id.recipient_hint);
    append(out, msg.obu_id.bytes);
    return out;
}

SafetyMessage decode_message(ByteView wire) {
    constexpr std::size_t HINT = crypto::FINGERPRINT_SIZE;
    std::size_t at = 0;
    auto need = [&](std::size_t n) {
        if (wire.size() - at < n) fail(Errc::malformed_message, "truncated message");
    };

    need(2);
    std::size_t payload_len = get_u16_be(wire, at);
    at += 2;

    SafetyMessage msg;
    need(payload_len);
    msg.payload.assign(wire.begin() + at, wire.begin() + at + payload_len);
    at += payload_len;

    need(crypto::DIGEST_SIZE);
    std::copy_n(wire.begin() + at, crypto::DIGEST_SIZE, msg.outer_digest.bytes.begin());
    at += crypto::DIGEST_SIZE;

    need(msg.home_ca.id.size());
    std::copy_n(wire.begin() + at, msg.home_ca.id.size(), msg.home_ca.id.begin());
    at += msg.home_ca.id.size();

    need(2);
    std::size_t ct_len = get_u16_be(wire, at);
    at += 2;
    if (ct_len < HINT) fail(Errc::malformed_message, "ciphertext field shorter than hint");
    need(ct_len);
    std::copy_n(wire.begin() + at, HINT, msg.obu_id.recipient_hint.begin());
    msg.obu_id.bytes.assign(wire.begin() + at + HINT, wire.begin() + at + ct_len);
    at += ct_len;

    if (at != wire.size()) fail(Errc::malformed_message, "trailing bytes after message");
    return msg;
}

std::string_view rsu_verdict_name(RsuVerdict v) {
    return v == RsuVerdict::IntegrityOk ? "ok" : "fault";
}

std::string_view detection_verdict_name(DetectionVerdict v) {
    return v == DetectionVerdict::Legitimate ? "legitimate" : "sybil";
}

}  // namespace vanet::protocol
