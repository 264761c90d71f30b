# Puts the repository root on sys.path so tests import `src.*` from a checkout.
