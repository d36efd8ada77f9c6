#ifndef VANET_PROTOCOL_HPP
#define VANET_PROTOCOL_HPP

#include "vanet/crypto.hpp"
#include "vanet/pki.hpp"

namespace vanet::protocol {

// Maximum payload representable by the wire format's 2-byte length field.
inline constexpr std::size_t MAX_PAYLOAD = 0xffff;

// Fixed identity-envelope plaintext: 16-byte vehicle id, 32-byte inner digest.
inline constexpr std::size_t OBU_ID_PLAIN_SIZE = 16 + crypto::DIGEST_SIZE;

// On-wire broadcast {payload, H_AK(payload), home CA, sealed identity}.
struct SafetyMessage {
    Bytes payload;
    crypto::Digest outer_digest;
    pki::CaId home_ca;
    crypto::Ciphertext obu_id;
    bool operator==(const SafetyMessage&) const = default;
};

// Decrypted identity envelope: the claimed vehicle and the inner keyed
// digest over (vehicle id || outer digest).
struct ObuIdPlain {
    pki::VehicleId vehicle;
    crypto::Digest inner_digest;
};

enum class RsuVerdict { IntegrityOk, Fault };

enum class DetectionVerdict { Legitimate, SybilDetected };

struct DetectionResult {
    DetectionVerdict verdict = DetectionVerdict::Legitimate;
    pki::VehicleId vehicle;
    crypto::Digest carried_inner;     // what the message claimed
    crypto::Digest recomputed_inner;  // what the escrowed key produces
};

// Seals {vehicle || keyed_digest(vehicle_key, vehicle || outer_digest)} to
// the local CA's public key.
crypto::Ciphertext build_obu_id(const pki::VehicleId& vehicle,
                                const crypto::SymmetricKey& vehicle_key,
                                const crypto::Digest& outer_digest, ByteView local_ca_public,
                                const crypto::Seed& nonce_seed);

// Phase-1 construction by an honest sender: outer digest under the region
// group key, identity envelope under the sender's own key.
// Throws Errc::message_too_large beyond MAX_PAYLOAD.
SafetyMessage build_safety_message(ByteView payload, const crypto::SymmetricKey& group_key,
                                   const pki::VehicleId& vehicle,
                                   const crypto::SymmetricKey& vehicle_key,
                                   const pki::CaId& home_ca, ByteView local_ca_public,
                                   const crypto::Seed& nonce_seed);

// Insider attacker: holds a valid group key (so the RSU check passes) but
// not the claimed vehicle's key. Caller must ensure attacker_key differs
// from the claimed vehicle's registered key.
SafetyMessage forge_sybil_message(ByteView payload, const crypto::SymmetricKey& group_key,
                                  const pki::VehicleId& claimed_vehicle,
                                  const crypto::SymmetricKey& attacker_key,
                                  const pki::CaId& home_ca, ByteView local_ca_public,
                                  const crypto::Seed& nonce_seed);

// Phase-2 integrity check: recompute the outer digest under the region
// group key. Fault is a verdict, not an error.
RsuVerdict rsu_check(const SafetyMessage& msg, const crypto::SymmetricKey& group_key);

// Phase 2-3: open the identity envelope at the local CA.
// Throws Errc::decryption_failed / Errc::malformed_plaintext.
ObuIdPlain open_obu_id(const crypto::Ciphertext& ct, ByteView local_ca_secret);

// Phase 4: recompute the inner digest with the escrowed key; a mismatch
// means the sender did not hold the claimed vehicle's key.
DetectionResult detect_sybil(const ObuIdPlain& plain, const crypto::Digest& outer_digest,
                             const crypto::SymmetricKey& escrowed_key);

// Wire codec: u16be payload length, payload, 32-byte outer digest, 8-byte
// home CA id, u16be ciphertext length, recipient hint, sealed bytes.
// decode(encode(m)) == m byte-exactly; decode rejects truncated, overlong
// or size-inconsistent input with Errc::malformed_message.
Bytes encode_message(const SafetyMessage& msg);
SafetyMessage decode_message(ByteView wire);

std::string_view rsu_verdict_name(RsuVerdict v);
std::string_view detection_verdict_name(DetectionVerdict v);

}  // namespace vanet::protocol

#endif  // VANET_PROTOCOL_HPP
