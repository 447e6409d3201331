"""
Bit-exact opportunistic network coding over three TDM slots.

Wire format of a frame: ``payload (L bytes) || check (4 bytes, big-endian)``.
b1 frames carry a CRC-32 (IEEE 802.3, reflected polynomial 0xEDB88320)
check and b2 frames a CRC-32C (Castagnoli, reflected polynomial
0x82F63B78) check, both with initial value and final XOR 0xFFFFFFFF. Which
code verifies a word tells a receiver which message it carries, so neither
the relay nor the users need any signalling.

Schedule: slot n carries b1 from BS, slot n+1 carries b2 from BS, slot n+2
carries the relay's word. The relay XORs whole frames (payload and check),
so a user that holds a clean copy of the partner's frame gets its own frame
back, check included, by XORing again.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .capacity import RateParams, RelayState, mutual_information
from .errors import FramingError
from .fading import TrialDraw

CHECK_BYTES = 4


class Crc32:
    """Table-driven reflected CRC-32 with init and final XOR 0xFFFFFFFF."""

    def __init__(self, name: str, reflected_poly: int):
        self.name = name
        self.reflected_poly = reflected_poly
        table = []
        for byte in range(256):
            crc = byte
            for _ in range(8):
                crc = (crc >> 1) ^ reflected_poly if crc & 1 else crc >> 1
            table.append(crc)
        self._table = tuple(table)

    def __call__(self, data: bytes) -> int:
        crc = 0xFFFFFFFF
        table = self._table
        for b in data:
            crc = (crc >> 8) ^ table[(crc ^ b) & 0xFF]
        return crc ^ 0xFFFFFFFF

    def __repr__(self):
        return f"Crc32({self.name!r}, {self.reflected_poly:#010x})"


class CrcCode(enum.Enum):
    CRC_1 = Crc32("CRC-32/ISO-HDLC", 0xEDB88320)
    CRC_2 = Crc32("CRC-32/ISCSI", 0x82F63B78)

    def checksum(self, data: bytes) -> int:
        return self.value(data)


@dataclass(frozen=True)
class Frame:
    payload: bytes
    check: int
    code: CrcCode

    def to_bytes(self) -> bytes:
        return self.payload + self.check.to_bytes(CHECK_BYTES, "big")


def crc_encode(payload: bytes, code: CrcCode, length: int | None = None) -> Frame:
    payload = bytes(payload)
    if length is not None and len(payload) != length:
        raise FramingError(f"payload is {len(payload)} bytes, expected {length}")
    return Frame(payload, code.checksum(payload), code)


def crc_verify(word: bytes, code: CrcCode) -> bool:
    """True when the trailing check matches ``code`` over the leading payload."""
    if len(word) < CHECK_BYTES:
        return False
    payload, check = word[:-CHECK_BYTES], word[-CHECK_BYTES:]
    return code.checksum(payload) == int.from_bytes(check, "big")


def xor_bytes(a: bytes, b: bytes) -> bytes:
    if len(a) != len(b):
        raise FramingError(f"cannot XOR words of length {len(a)} and {len(b)}")
    return (int.from_bytes(a, "big") ^ int.from_bytes(b, "big")).to_bytes(len(a), "big")


def null_word(frame_len: int) -> bytes:
    return bytes(frame_len)


@dataclass(frozen=True)
class ReceivedWord:
    data: bytes
    slot: int  # 0, 1, 2 for slots n, n+1, n+2


class ActionKind(enum.Enum):
    XOR_BOTH = "xor"
    FORWARD_1 = "forward-b1"
    FORWARD_2 = "forward-b2"
    NULL = "null"


_STATE_OF_ACTION = {
    ActionKind.XOR_BOTH: RelayState.BOTH,
    ActionKind.FORWARD_1: RelayState.FIRST_ONLY,
    ActionKind.FORWARD_2: RelayState.SECOND_ONLY,
    ActionKind.NULL: RelayState.NEITHER,
}


@dataclass(frozen=True)
class RelayAction:
    kind: ActionKind
    word: bytes | None = None

    @property
    def state(self) -> RelayState:
        return _STATE_OF_ACTION[self.kind]

    def transmitted(self, frame_len: int) -> bytes:
        """Word actually sent in slot n+2; the null action sends all zeros."""
        return self.word if self.word is not None else null_word(frame_len)


def relay_decide(rx1: ReceivedWord, rx2: ReceivedWord) -> RelayAction:
    ok1 = crc_verify(rx1.data, CrcCode.CRC_1)
    ok2 = crc_verify(rx2.data, CrcCode.CRC_2)
    if ok1 and ok2:
        return RelayAction(ActionKind.XOR_BOTH, xor_bytes(rx1.data, rx2.data))
    if ok1:
        return RelayAction(ActionKind.FORWARD_1, rx1.data)
    if ok2:
        return RelayAction(ActionKind.FORWARD_2, rx2.data)
    return RelayAction(ActionKind.NULL)


@dataclass(frozen=True)
class DecodeResult:
    recovered: bytes | None
    branch: int | None
    branches_passed: tuple[int, ...] = field(default=())

    @property
    def success(self) -> bool:
        return self.recovered is not None


def _decode(own_direct, partner_direct, relay, own_code, partner_code) -> DecodeResult:
    # branch 1: direct copy; branch 2: relay XOR partner; branch 3: relay forward
    candidates = {}
    if own_direct is not None and crc_verify(own_direct.data, own_code):
        candidates[1] = own_direct.data
    if (relay is not None and partner_direct is not None
            and crc_verify(partner_direct.data, partner_code)):
        combined = xor_bytes(relay.data, partner_direct.data)
        if crc_verify(combined, own_code):
            candidates[2] = combined
    if relay is not None and crc_verify(relay.data, own_code):
        candidates[3] = relay.data
    if not candidates:
        return DecodeResult(None, None)
    best = min(candidates)
    return DecodeResult(candidates[best][:-CHECK_BYTES], best, tuple(sorted(candidates)))


def user1_decode(rx_n: ReceivedWord | None, rx_n1: ReceivedWord | None,
                 rx_n2: ReceivedWord | None) -> DecodeResult:
    """Recover b1 at U1 from the three slots; lowest passing branch wins."""
    return _decode(rx_n, rx_n1, rx_n2, CrcCode.CRC_1, CrcCode.CRC_2)


def user2_decode(rx_n: ReceivedWord | None, rx_n1: ReceivedWord | None,
                 rx_n2: ReceivedWord | None) -> DecodeResult:
    """Recover b2 at U2; its direct slot is n+1 and its partner slot is n."""
    return _decode(rx_n1, rx_n, rx_n2, CrcCode.CRC_2, CrcCode.CRC_1)


def corrupt(word: bytes, rng: np.random.Generator) -> bytes:
    """Flip a uniformly random nonzero subset of the word's bits."""
    while True:
        mask = rng.bytes(len(word))
        if any(mask):
            return xor_bytes(word, mask)


HOPS = ("rs_n", "rs_n1", "u1_n", "u1_n1", "u1_n2", "u2_n", "u2_n1", "u2_n2")


@dataclass(frozen=True)
class Exchange:
    """Everything that happened in one three-slot exchange."""

    frames: tuple[Frame, Frame]
    hop_ok: dict
    rs_rx: tuple[ReceivedWord, ReceivedWord]
    action: RelayAction
    u1_rx: tuple[ReceivedWord, ReceivedWord, ReceivedWord]
    u2_rx: tuple[ReceivedWord, ReceivedWord, ReceivedWord]
    u1: DecodeResult
    u2: DecodeResult


def _check_payloads(payloads):
    b1, b2 = (bytes(p) for p in payloads)
    if len(b1) != len(b2):
        raise FramingError(f"payload lengths differ: {len(b1)} vs {len(b2)}")
    return b1, b2


def run_exchange(payloads, hop_ok: dict, rng: np.random.Generator) -> Exchange:
    """Run the protocol with each hop either clean or corrupted.

    ``hop_ok`` maps every name in ``HOPS`` to a bool.
    """
    b1, b2 = _check_payloads(payloads)
    f1 = crc_encode(b1, CrcCode.CRC_1)
    f2 = crc_encode(b2, CrcCode.CRC_2)
    w1, w2 = f1.to_bytes(), f2.to_bytes()

    def rx(name, word, slot):
        return ReceivedWord(word if hop_ok[name] else corrupt(word, rng), slot)

    rs_rx = (rx("rs_n", w1, 0), rx("rs_n1", w2, 1))
    action = relay_decide(*rs_rx)
    w_relay = action.transmitted(len(w1))
    u1_rx = (rx("u1_n", w1, 0), rx("u1_n1", w2, 1), rx("u1_n2", w_relay, 2))
    u2_rx = (rx("u2_n", w1, 0), rx("u2_n1", w2, 1), rx("u2_n2", w_relay, 2))
    return Exchange((f1, f2), dict(hop_ok), rs_rx, action, u1_rx, u2_rx,
                    user1_decode(*u1_rx), user2_decode(*u2_rx))


def hop_outcomes(trial: TrialDraw, params: RateParams) -> dict:
    """Per-hop reception quality: clean iff the slot MI exceeds the rate."""
    slots = trial.rs_slots + trial.u1_slots + trial.u2_slots
    return {name: mutual_information(s, params) > params.rate for name, s in zip(HOPS, slots)}


def run_packet_trial(trial: TrialDraw, params: RateParams, payloads,
                     rng: np.random.Generator | None = None) -> tuple[DecodeResult, RelayState]:
    """U1's decode result and the relay state implied by its action."""
    if rng is None:
        rng = np.random.default_rng(0)
    ex = run_exchange(payloads, hop_outcomes(trial, params), rng)
    return ex.u1, ex.action.state
