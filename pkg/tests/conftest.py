import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

SMALL_PRIMES = (3, 5, 7, 11, 13)
PRIMES_TO_31 = (3, 5, 7, 11, 13, 17, 19, 23, 29, 31)
PRIMES_TO_97 = PRIMES_TO_31 + (37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)
