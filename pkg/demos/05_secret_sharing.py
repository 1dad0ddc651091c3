"""
Secret sharing with masker circles
==================================

Alice encodes a message as a qubit state and masks it once per receiver,
each time with a different masker.  One receiver alone learns only a
circle the message lies on; cooperating receivers intersect their
circles.  Scheme geometry decides everything: the three axis maskers pin
the message uniquely, circles tangent at a pole decode from any two
shares, and all-vertical circles leave two candidates forever.
"""

import numpy as np

from qmask import (
    AngleState,
    decode,
    encode,
    fig1_axes,
    fig2_vertical,
    fig3_pole,
    share_constraint,
)

message = AngleState(x=1.0472, y=0.7854)
print(f"message (x, y) = ({message.x}, {message.y})")

# --- three axis maskers: full reconstruction ---------------------------------
shares = encode(message, fig1_axes())
print("\naxis scheme: what each receiver alone can see")
for i, share in enumerate(shares, 1):
    c = share_constraint(share)
    n = c.normal
    print(f"  receiver {i}: circle ({n[0]:+.2f})X + ({n[1]:+.2f})Y + ({n[2]:+.2f})Z = {c.offset:+.4f}")
result = decode(shares)
print(f"  all three cooperate -> {type(result).__name__}: "
      f"(x, y) = ({result.state.x:.6f}, {result.state.y:.6f})")

# --- circles tangent at the pole: any two shares suffice ----------------------
pole_message = AngleState(0.0, 0.0)
shares = encode(pole_message, fig3_pole(8))
result = decode(shares[:2])
print(f"\npole scheme ({len(shares)} receivers): two shares give "
      f"{type(result).__name__} at (x, y) = ({result.state.x:.6f}, {result.state.y:.6f})")

# --- all-vertical circles: the reflection is never resolved -------------------
vert_message = AngleState(np.pi / 6, np.pi / 4)
shares = encode(vert_message, fig2_vertical(8))
result = decode(shares)
print(f"\nvertical scheme, all {len(shares)} shares -> {type(result).__name__}:")
print(f"  candidate 1: (x, y) = ({result.first.x:.6f}, {result.first.y:.6f})")
print(f"  candidate 2: (x, y) = ({result.second.x:.6f}, {result.second.y:.6f})")
print("  the second candidate is the Z-reflection; no number of vertical shares separates them")
