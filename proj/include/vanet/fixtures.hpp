#ifndef VANET_FIXTURES_HPP
#define VANET_FIXTURES_HPP

#include <string>

#include "vanet/bytes.hpp"

namespace vanet::fixtures {

// Emits the golden-vector files from the implementation. The inputs are
// derived from fixed SHA-256 streams shared with scripts/gen_fixtures.py,
// which regenerates the same files independently with Python's crypto
// stack; tests require the two to agree byte for byte.

// Deterministic input-derivation stream (not a key derivation).
Bytes fixture_bytes(std::string_view tag, std::size_t n);

// `hex(key),hex(message),hex(digest)`
std::string keyed_digest_vectors();

// `hex(seed),hex(public),hex(secret)`
std::string keypair_vectors();

// `hex(recipient_seed),hex(nonce_seed),hex(plaintext),hex(hint),hex(ciphertext)`
std::string encrypt_vectors();

// Full safety-message builds:
// `payload,group_key,vehicle,vehicle_key,home_ca,ca_seed,nonce_seed,encoded` (hex)
std::string wire_vectors();

}  // namespace vanet::fixtures

#endif  // VANET_FIXTURES_HPP
