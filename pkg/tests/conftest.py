import sys

# Exact values at n = 10^5 run past the interpreter's default int-to-str
# conversion guard; the digit-for-digit comparisons need the headroom.
sys.set_int_max_str_digits(100_000_000)
