"""Stand-in compiler driver used by the harness tests.

Usage: python fake_compiler.py <input> [-o <output>] [flags...]

Markers in the source pick the behavior; otherwise about half of the
programs are rejected based on a hash of their content. When the bitmap
environment variable is set, one byte per source line is marked.
"""
import hashlib
import os
import signal
import sys
import time

BITMAP_ENV = "FORJADOR_BITMAP"

ICE_BANNER = """{path}:1:1: internal compiler error: in fake_fold, at fake.cc:42
0x1234abc fake_fold(tree_node*)
\t../../gcc/fake.cc:42
0x1234def fake_expand(tree_node*)
\t../../gcc/fake.cc:77
Please submit a full bug report, with preprocessed source (by using -freport-bug).
"""


def mark_bitmap(source: str) -> None:
    path = os.environ.get(BITMAP_ENV)
    if not path:
        return
    with open(path, "rb") as f:
        bitmap = bytearray(f.read())
    if not bitmap:
        return
    for line in source.splitlines():
        if line.strip():
            index = int(hashlib.sha1(line.encode("utf-8")).hexdigest()[:8], 16) % len(bitmap)
            bitmap[index] = min(255, bitmap[index] + 1)
    with open(path, "wb") as f:
        f.write(bytes(bitmap))


def main(argv) -> int:
    if not argv:
        sys.stderr.write("fake_compiler: no input files\n")
        return 1
    path = argv[0]
    with open(path, encoding="utf-8") as f:
        source = f.read()

    mark_bitmap(source)

    if "HANG_MARKER" in source:
        time.sleep(60)
    if "SEGV_MARKER" in source:
        sys.stderr.flush()
        os.kill(os.getpid(), signal.SIGSEGV)
    if "OOM_MARKER" in source:
        sys.stderr.write("cc1: out of memory allocating 4096 bytes\n")
        return 1
    if "ICE_MARKER" in source:
        sys.stderr.write(ICE_BANNER.format(path=os.path.basename(path)))
        return 4
    if "CPP_ONLY_MARKER" in source and "--lang=c" in argv:
        sys.stderr.write(f"{os.path.basename(path)}:1:1: error: unknown type name 'class'\n")
        return 1
    if "ACCEPT_MARKER" not in source:
        if "REJECT_MARKER" in source or hashlib.sha1(source.encode("utf-8")).digest()[0] % 2:
            sys.stderr.write(f"{os.path.basename(path)}:1:1: error: expected ';' before '}}' token\n")
            return 1

    if "-o" in argv:
        output = argv[argv.index("-o") + 1]
        with open(output, "wb") as f:
            f.write(b"\x7fELF")
    return 0


if __name__ == "__main__":
    sys.exit(main(sys.argv[1:]))
