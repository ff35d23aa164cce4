"""Cell-addressed seed derivation: master seed + string keys -> stable 63-bit seed."""
import hashlib


def derive_seed(master_seed: int, *keys: object) -> int:
    """Hash (master_seed, *keys) to a non-negative int. Stable across processes and platforms."""
    text = "\x1f".join([str(int(master_seed))] + [str(k) for k in keys])
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") >> 1
