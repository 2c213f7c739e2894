"""Byte-level round-trips for polynomials, ciphertexts, and keys.

Framing: a little-endian u32 header length, a JSON header, then raw
payload arrays in header-declared order. Compressed switching keys
serialize as seed + b-rows only, at half the expanded size.
"""

from __future__ import annotations

import json
import struct

import numpy as np

from .ckks import Ciphertext, SwitchingKey
from .rnspoly import RnsPoly
from .zq import U64


def _frame(header: dict, payloads: list[bytes]) -> bytes:
    head = json.dumps(header, sort_keys=True).encode()
    return struct.pack("<I", len(head)) + head + b"".join(payloads)


def _unframe(buf: bytes) -> tuple[dict, bytes]:
    (hlen,) = struct.unpack_from("<I", buf, 0)
    header = json.loads(buf[4:4 + hlen].decode())
    return header, buf[4 + hlen:]


def poly_to_bytes(x: RnsPoly) -> bytes:
    header = {"kind": "poly", "moduli": list(x.moduli), "rep": x.rep,
              "n": x.n}
    return _frame(header, [np.ascontiguousarray(x.data).tobytes()])


def poly_from_bytes(buf: bytes) -> RnsPoly:
    header, body = _unframe(buf)
    assert header["kind"] == "poly"
    mods = tuple(header["moduli"])
    n = header["n"]
    data = np.frombuffer(body, dtype=U64).reshape(len(mods), n).copy()
    return RnsPoly(mods, data, header["rep"])


def ciphertext_to_bytes(ct: Ciphertext) -> bytes:
    pa, pb = poly_to_bytes(ct.a), poly_to_bytes(ct.b)
    header = {"kind": "ct", "delta": ct.delta, "la": len(pa), "lb": len(pb)}
    return _frame(header, [pa, pb])


def ciphertext_from_bytes(buf: bytes) -> Ciphertext:
    header, body = _unframe(buf)
    assert header["kind"] == "ct"
    la = header["la"]
    return Ciphertext(poly_from_bytes(body[:la]),
                      poly_from_bytes(body[la:la + header["lb"]]),
                      header["delta"])


def switching_key_to_bytes(key: SwitchingKey) -> bytes:
    header = {"kind": "ksk", "moduli": list(key.moduli),
              "shape": list(key.b.shape),
              "seed": key.seed.hex() if key.seed is not None else None,
              "expanded": key.a is not None}
    payloads = [np.ascontiguousarray(key.b).tobytes()]
    if key.a is not None:
        payloads.append(np.ascontiguousarray(key.a).tobytes())
    return _frame(header, payloads)


def switching_key_from_bytes(buf: bytes) -> SwitchingKey:
    header, body = _unframe(buf)
    assert header["kind"] == "ksk"
    shape = tuple(header["shape"])
    nb = int(np.prod(shape)) * 8
    b = np.frombuffer(body[:nb], dtype=U64).reshape(shape).copy()
    a = None
    if header["expanded"]:
        a = np.frombuffer(body[nb:2 * nb], dtype=U64).reshape(shape).copy()
    seed = bytes.fromhex(header["seed"]) if header["seed"] else None
    return SwitchingKey(tuple(header["moduli"]), b, seed=seed, a=a)
