#!/usr/bin/env python3
"""Regenerates the golden fixture files under tests/fixtures/.

Every vector is computed here with Python's hashlib/hmac and the
`cryptography` package only, independently of the C++ implementation.
The C++ `sybilsim fixtures` subcommand emits the same files from the
implementation; the two must match byte for byte.

Scheme parameters (shared contract with src/crypto.cpp):
  curve            secp224r1
  scalar(seed,lbl) 1 + HMAC-SHA256(key=seed, msg=lbl) mod (n-1)
  keygen label     "vanet.p224.keygen.v1"
  ephemeral label  "vanet.p224.ephemeral.v1"
  secret bytes     28-byte big-endian scalar
  public bytes     SEC1 compressed point (29 bytes)
  fingerprint      SHA-256(public bytes)
  KDF              PRK = HMAC(key="vanet.hpke.v1", msg=x || eph_pub || recip_pub)
                   k_enc = HMAC(PRK, 01); k_mac = HMAC(PRK, k_enc || 02)
                   iv = HMAC(PRK, k_mac || 03)[:16]
  sealed payload   eph_pub || AES-256-CTR(k_enc, iv, pt) || HMAC(k_mac, eph_pub || body)
"""

import hashlib
import hmac
import os

from cryptography.hazmat.primitives import serialization
from cryptography.hazmat.primitives.asymmetric import ec
from cryptography.hazmat.primitives.ciphers import Cipher, algorithms, modes

P224_ORDER = 0xFFFFFFFFFFFFFFFFFFFFFFFFFFFF16A2E0B8F03E13DD29455C5C2A3D

KEYGEN_LABEL = b"vanet.p224.keygen.v1"
EPHEMERAL_LABEL = b"vanet.p224.ephemeral.v1"
KDF_KEY = b"vanet.hpke.v1"
SYMKEY_LABEL = b"vanet.symkey.v1"

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "tests", "fixtures")


def hmac256(key: bytes, msg: bytes) -> bytes:
    return hmac.new(key, msg, hashlib.sha256).digest()


def fixture_bytes(tag: str, n: int) -> bytes:
    """Deterministic byte stream used only to derive fixture inputs."""
    out = b""
    ctr = 0
    while len(out) < n:
        out += hashlib.sha256(f"vanet.fixture.{tag}.{ctr}".encode()).digest()
        ctr += 1
    return out[:n]


def scalar_from_seed(seed: bytes, label: bytes) -> int:
    return 1 + int.from_bytes(hmac256(seed, label), "big") % (P224_ORDER - 1)


def keypair_from_seed(seed: bytes):
    d = scalar_from_seed(seed, KEYGEN_LABEL)
    priv = ec.derive_private_key(d, ec.SECP224R1())
    pub = priv.public_key().public_bytes(
        serialization.Encoding.X962, serialization.PublicFormat.CompressedPoint
    )
    return pub, d.to_bytes(28, "big")


def ecies_encrypt(recip_pub: bytes, plaintext: bytes, nonce_seed: bytes) -> bytes:
    d_eph = scalar_from_seed(nonce_seed, EPHEMERAL_LABEL)
    eph_priv = ec.derive_private_key(d_eph, ec.SECP224R1())
    eph_pub = eph_priv.public_key().public_bytes(
        serialization.Encoding.X962, serialization.PublicFormat.CompressedPoint
    )
    peer = ec.EllipticCurvePublicKey.from_encoded_point(ec.SECP224R1(), recip_pub)
    shared_x = eph_priv.exchange(ec.ECDH(), peer)
    prk = hmac256(KDF_KEY, shared_x + eph_pub + recip_pub)
    k_enc = hmac256(prk, b"\x01")
    k_mac = hmac256(prk, k_enc + b"\x02")
    iv = hmac256(prk, k_mac + b"\x03")[:16]
    enc = Cipher(algorithms.AES(k_enc), modes.CTR(iv)).encryptor()
    body = enc.update(plaintext) + enc.finalize()
    tag = hmac256(k_mac, eph_pub + body)
    return eph_pub + body + tag


def fingerprint(pub: bytes) -> bytes:
    return hashlib.sha256(pub).digest()


def gen_keyed_digest():
    lines = []
    # the all-zero key / empty message anchor vector
    key, msg = bytes(32), b""
    lines.append(f"{key.hex()},{msg.hex()},{hmac256(key, msg).hex()}")
    msg_lens = [0, 1, 3, 16, 32, 33, 64, 100, 255, 1000, 4096, 65536]
    for i, n in enumerate(msg_lens):
        key = fixture_bytes(f"kd.key.{i}", 32)
        msg = fixture_bytes(f"kd.msg.{i}", n)
        lines.append(f"{key.hex()},{msg.hex()},{hmac256(key, msg).hex()}")
    return lines


def gen_keypairs():
    lines = []
    for i in range(8):
        seed = fixture_bytes(f"kp.seed.{i}", 32)
        pub, sec = keypair_from_seed(seed)
        lines.append(f"{seed.hex()},{pub.hex()},{sec.hex()}")
    return lines


def gen_encrypt():
    lines = []
    pt_lens = [0, 1, 17, 48, 64, 256, 1000, 4096]
    for i, n in enumerate(pt_lens):
        recip_seed = fixture_bytes(f"enc.recip.{i}", 32)
        nonce_seed = fixture_bytes(f"enc.nonce.{i}", 32)
        pt = fixture_bytes(f"enc.pt.{i}", n)
        pub, _ = keypair_from_seed(recip_seed)
        ct = ecies_encrypt(pub, pt, nonce_seed)
        lines.append(
            f"{recip_seed.hex()},{nonce_seed.hex()},{pt.hex()},"
            f"{fingerprint(pub).hex()},{ct.hex()}"
        )
    return lines


def gen_wire():
    lines = []
    payload_lens = [0, 13, 64, 300]
    for i, n in enumerate(payload_lens):
        payload = fixture_bytes(f"wire.payload.{i}", n)
        group_key = fixture_bytes(f"wire.ak.{i}", 32)
        vehicle = fixture_bytes(f"wire.vid.{i}", 16)
        vehicle_key = fixture_bytes(f"wire.vkey.{i}", 32)
        home_ca = fixture_bytes(f"wire.ca.{i}", 8)
        ca_seed = fixture_bytes(f"wire.caseed.{i}", 32)
        nonce_seed = fixture_bytes(f"wire.nonce.{i}", 32)

        ca_pub, _ = keypair_from_seed(ca_seed)
        outer = hmac256(group_key, payload)
        inner = hmac256(vehicle_key, vehicle + outer)
        sealed = ecies_encrypt(ca_pub, vehicle + inner, nonce_seed)
        ct_field = fingerprint(ca_pub) + sealed

        encoded = (
            len(payload).to_bytes(2, "big")
            + payload
            + outer
            + home_ca
            + len(ct_field).to_bytes(2, "big")
            + ct_field
        )
        lines.append(
            f"{payload.hex()},{group_key.hex()},{vehicle.hex()},{vehicle_key.hex()},"
            f"{home_ca.hex()},{ca_seed.hex()},{nonce_seed.hex()},{encoded.hex()}"
        )
    return lines


def write(name, lines):
    path = os.path.join(OUT_DIR, name)
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    print(f"wrote {path} ({len(lines)} vectors)")


def main():
    os.makedirs(OUT_DIR, exist_ok=True)
    write("keyed_digest_vectors.txt", gen_keyed_digest())
    write("keypair_vectors.txt", gen_keypairs())
    write("encrypt_vectors.txt", gen_encrypt())
    write("wire_vectors.txt", gen_wire())


if __name__ == "__main__":
    main()
