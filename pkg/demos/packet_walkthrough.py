"""One exchange traced slot by slot, then a few forced failure patterns
that exercise each relay action and each user decoding branch.

Run: python demos/packet_walkthrough.py
"""

from onclab.cli import cmd_packet_demo

B1 = "48656c6c6f2c2055312100"   # "Hello, U1!\0"
B2 = "476f6f646279652055322e"   # "Goodbye U2."

cases = {
    "all hops clean: relay XORs, both users take branch 1": [],
    "U1 misses slot n: recovers b1 from the XOR and its copy of b2": ["u1_n"],
    "relay misses b2: forwards b1 only": ["rs_n1"],
    "relay misses both: sends the null word, U1 depends on slot n": ["rs_n", "rs_n1", "u1_n"],
}
for title, fail in cases.items():
    print(f"\n# {title}")
    cmd_packet_demo(B1, B2, seed=3, clean=True, fail=fail)

# %% a fading-driven draw at low SIR
print("\n# one random draw at 0 dB SIR, R=0.5")
cmd_packet_demo(B1, B2, seed=11, sir_db=0.0, rate=0.5)
