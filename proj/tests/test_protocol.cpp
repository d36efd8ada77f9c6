#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <string>

#include "test_util.hpp"
#include "vanet/protocol.hpp"

using namespace vanet;
using namespace vanet::protocol;
using testutil::Rng;

namespace {

struct Party {
    pki::VehicleId vehicle;
    crypto::SymmetricKey vehicle_key;
    crypto::SymmetricKey group_key;
    pki::CaId home_ca;
    crypto::KeyPair ca;

    static Party make(Rng& rng) {
        Party p;
        auto vid = rng.bytes(p.vehicle.id.size());
        std::copy(vid.begin(), vid.end(), p.vehicle.id.begin());
        p.vehicle_key = rng.key();
        p.group_key = rng.key();
        auto cid = rng.bytes(p.home_ca.id.size());
        std::copy(cid.begin(), cid.end(), p.home_ca.id.begin());
        p.ca = crypto::generate_keypair(rng.seed32());
        return p;
    }

    SafetyMessage honest(Rng& rng, const Bytes& payload) const {
        return build_safety_message(payload, group_key, vehicle, vehicle_key, home_ca,
                                    ca.public_key, rng.seed32());
    }
};

}  // namespace

TEST_CASE("identity envelope roundtrips through the local CA") {
    Rng rng(31);
    Party p = Party::make(rng);
    crypto::Digest outer = crypto::keyed_digest(p.group_key, rng.bytes(40));

    crypto::Seed nonce = rng.seed32();
    crypto::Ciphertext ct =
        build_obu_id(p.vehicle, p.vehicle_key, outer, p.ca.public_key, nonce);
    ObuIdPlain plain = open_obu_id(ct, p.ca.secret_key);
    CHECK(plain.vehicle == p.vehicle);

    // inner digest equals an independently recomputed keyed hash of the
    // 48-byte (id || outer digest) concatenation
    Bytes concat;
    append(concat, p.vehicle.id);
    append(concat, outer.bytes);
    REQUIRE(concat.size() == 48);
    CHECK(plain.inner_digest == crypto::keyed_digest(p.vehicle_key, concat));

    // deterministic for a fixed nonce seed
    CHECK(build_obu_id(p.vehicle, p.vehicle_key, outer, p.ca.public_key, nonce) == ct);
}

TEST_CASE("honest messages pass the RSU integrity check") {
    Rng rng(32);
    Party p = Party::make(rng);

    SafetyMessage msg = p.honest(rng, rng.bytes(120));
    CHECK(rsu_check(msg, p.group_key) == RsuVerdict::IntegrityOk);

    SafetyMessage tampered = msg;
    tampered.payload[7] ^= 0x01;
    CHECK(rsu_check(tampered, p.group_key) == RsuVerdict::Fault);

    SafetyMessage empty = p.honest(rng, Bytes{});
    CHECK(rsu_check(empty, p.group_key) == RsuVerdict::IntegrityOk);

    // key isolation: another region's group key must not verify
    CHECK(rsu_check(msg, rng.key()) == RsuVerdict::Fault);
}

TEST_CASE("oversize payloads are rejected at build time") {
    Rng rng(33);
    Party p = Party::make(rng);
    Bytes big(MAX_PAYLOAD + 1, 0x55);
    CHECK(testutil::code_of([&] { p.honest(rng, big); }) == Errc::message_too_large);
}

TEST_CASE("the full honest pipeline ends Legitimate") {
    Rng rng(34);
    for (int i = 0; i < 1000; ++i) {
        Party p = Party::make(rng);
        SafetyMessage msg = p.honest(rng, rng.bytes(rng.below(256)));
        REQUIRE(rsu_check(msg, p.group_key) == RsuVerdict::IntegrityOk);
        ObuIdPlain plain = open_obu_id(msg.obu_id, p.ca.secret_key);
        DetectionResult r = detect_sybil(plain, msg.outer_digest, p.vehicle_key);
        REQUIRE(r.verdict == DetectionVerdict::Legitimate);
        REQUIRE(r.vehicle == p.vehicle);
        REQUIRE(r.carried_inner == r.recomputed_inner);
    }
}

TEST_CASE("forged messages pass the RSU but are detected at the CA") {
    Rng rng(35);
    for (int i = 0; i < 300; ++i) {
        Party victim = Party::make(rng);
        crypto::SymmetricKey attacker_key = rng.key();  // != victim's key (random 256-bit)
        SafetyMessage forged =
            forge_sybil_message(rng.bytes(60), victim.group_key, victim.vehicle, attacker_key,
                                victim.home_ca, victim.ca.public_key, rng.seed32());

        // insider model: the attacker holds a valid AK
        REQUIRE(rsu_check(forged, victim.group_key) == RsuVerdict::IntegrityOk);

        ObuIdPlain plain = open_obu_id(forged.obu_id, victim.ca.secret_key);
        DetectionResult r = detect_sybil(plain, forged.outer_digest, victim.vehicle_key);
        REQUIRE(r.verdict == DetectionVerdict::SybilDetected);
        REQUIRE(r.carried_inner != r.recomputed_inner);
    }
}

TEST_CASE("corrupted inner evidence is detected") {
    Rng rng(36);
    Party p = Party::make(rng);
    SafetyMessage msg = p.honest(rng, rng.bytes(64));
    ObuIdPlain plain = open_obu_id(msg.obu_id, p.ca.secret_key);
    plain.inner_digest = crypto::Digest{};  // 32 zero bytes
    CHECK(detect_sybil(plain, msg.outer_digest, p.vehicle_key).verdict ==
          DetectionVerdict::SybilDetected);
}

TEST_CASE("envelopes sealed to another CA do not open") {
    Rng rng(37);
    Party p = Party::make(rng);
    crypto::KeyPair other_ca = crypto::generate_keypair(rng.seed32());
    SafetyMessage msg = p.honest(rng, rng.bytes(64));
    CHECK(testutil::code_of([&] { open_obu_id(msg.obu_id, other_ca.secret_key); }) ==
          Errc::decryption_failed);
}

TEST_CASE("short envelope plaintexts are rejected as malformed") {
    Rng rng(38);
    crypto::KeyPair ca = crypto::generate_keypair(rng.seed32());
    crypto::Ciphertext ct = crypto::encrypt(ca.public_key, rng.bytes(10), rng.seed32());
    CHECK(testutil::code_of([&] { open_obu_id(ct, ca.secret_key); }) ==
          Errc::malformed_plaintext);
}

TEST_CASE("tamper wall: single-byte mutations fault at the RSU") {
    Rng rng(39);
    Party p = Party::make(rng);
    for (int i = 0; i < 50; ++i) {
        SafetyMessage msg = p.honest(rng, rng.bytes(1 + rng.below(200)));
        for (int k = 0; k < 10; ++k) {
            SafetyMessage m = msg;
            std::uint8_t delta = static_cast<std::uint8_t>(1 + rng.below(255));
            if (k % 2 == 0)
                m.payload[rng.below(m.payload.size())] ^= delta;
            else
                m.outer_digest.bytes[rng.below(m.outer_digest.bytes.size())] ^= delta;
            REQUIRE(rsu_check(m, p.group_key) == RsuVerdict::Fault);
        }
    }
}

TEST_CASE("wire codec is a bijection on valid messages") {
    Rng rng(40);
    for (int i = 0; i < 100; ++i) {
        Party p = Party::make(rng);
        std::size_t len = i == 0 ? 0 : rng.below(2000);
        SafetyMessage msg = p.honest(rng, rng.bytes(len));
        Bytes wire = encode_message(msg);
        CHECK(decode_message(wire) == msg);
        CHECK(encode_message(decode_message(wire)) == wire);
    }
}

TEST_CASE("decoder rejects malformed framing") {
    Rng rng(41);
    Party p = Party::make(rng);
    SafetyMessage msg = p.honest(rng, rng.bytes(33));
    Bytes wire = encode_message(msg);

    CHECK(testutil::code_of([&] { decode_message(Bytes{}); }) == Errc::malformed_message);

    Bytes truncated(wire.begin(), wire.end() - 1);
    CHECK(testutil::code_of([&] { decode_message(truncated); }) == Errc::malformed_message);

    Bytes trailing = wire;
    trailing.push_back(0x00);
    CHECK(testutil::code_of([&] { decode_message(trailing); }) == Errc::malformed_message);

    Bytes bad_payload_len = wire;  // inflate the payload length field by 1
    bad_payload_len[1] += 1;
    CHECK(testutil::code_of([&] { decode_message(bad_payload_len); }) ==
          Errc::malformed_message);

    Bytes bad_ct_len = wire;  // inflate the ciphertext length field by 1
    std::size_t ct_len_at = 2 + msg.payload.size() + 32 + 8;
    bad_ct_len[ct_len_at + 1] += 1;
    CHECK(testutil::code_of([&] { decode_message(bad_ct_len); }) == Errc::malformed_message);
}

TEST_CASE("wire golden vectors from the independent oracle") {
    auto rows = testutil::read_csv_fixture("wire_vectors.txt");
    REQUIRE(rows.size() == 4);
    for (const auto& row : rows) {
        REQUIRE(row.size() == 8);
        Bytes payload = hex_decode(row[0]);
        crypto::SymmetricKey group_key{hex_decode_fixed<32>(row[1])};
        pki::VehicleId vehicle{hex_decode_fixed<16>(row[2])};
        crypto::SymmetricKey vehicle_key{hex_decode_fixed<32>(row[3])};
        pki::CaId home_ca{hex_decode_fixed<8>(row[4])};
        crypto::KeyPair ca = crypto::generate_keypair(hex_decode_fixed<32>(row[5]));
        crypto::Seed nonce = hex_decode_fixed<32>(row[6]);

        SafetyMessage msg = build_safety_message(payload, group_key, vehicle, vehicle_key,
                                                 home_ca, ca.public_key, nonce);
        CHECK(hex_encode(encode_message(msg)) == row[7]);

        // decode the oracle's bytes and drive the whole pipeline
        SafetyMessage decoded = decode_message(hex_decode(row[7]));
        CHECK(decoded == msg);
        CHECK(rsu_check(decoded, group_key) == RsuVerdict::IntegrityOk);
        ObuIdPlain plain = open_obu_id(decoded.obu_id, ca.secret_key);
        CHECK(plain.vehicle == vehicle);
        CHECK(detect_sybil(plain, decoded.outer_digest, vehicle_key).verdict ==
              DetectionVerdict::Legitimate);
    }
}
