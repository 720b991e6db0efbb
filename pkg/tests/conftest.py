import pytest

# the sign-check exercise program (kept verbatim across the suite)
SIGN_CHECK = """x = 7
if x > 0
  write 'x is a positive number.'
else
  write 'x is a negative number.'
"""

SIGN_CHECK_WITH_ZERO = """x = 7
if x > 0
  write 'x is a positive number.'
else if x == 0
  write 'x is zero.'
else
  write 'x is a negative number.'
"""

# running-sum exercise: the if body starts at the if's own indent
SUM_LOOP_BROKEN = """sum=0
for x in [0..10]
  if x>8
  sum=sum+x //<----- Syntax Error
  write 'sum= ' + sum
"""

SUM_LOOP_FIXED = """sum = 0
for x in [0..10]
  if x > 8
    sum = sum + x
    write 'sum= ' + sum
"""

# ten forward moves turning 45 degrees each: an octagon plus two overdrawn sides
OCTAGON_WALK = """speed 2
pen red
for [1..10]
  fd 100
  rt 45
"""


@pytest.fixture
def sign_check():
    return SIGN_CHECK


@pytest.fixture
def sum_loop_broken():
    return SUM_LOOP_BROKEN


@pytest.fixture
def octagon_walk():
    return OCTAGON_WALK
