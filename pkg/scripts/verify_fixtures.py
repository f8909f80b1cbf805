import os
import sys
import time

# Add parent directory to path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from arthom.fixtures import SCENARIOS, verify_fixture
from arthom.report import verify_assertions


def main():
    names = sys.argv[1:] or list(SCENARIOS)
    print("=" * 60)
    print(f"Verifying {len(names)} fixture scenarios")
    print("=" * 60)

    failures = 0
    for name in names:
        started = time.perf_counter()
        try:
            report = verify_fixture(name)
        except Exception as e:
            print(f"❌ {name}: {e}")
            failures += 1
            continue
        elapsed = time.perf_counter() - started
        chain = verify_assertions(report.assertions)
        if report.ok and chain["valid"]:
            print(f"✅ {name} ({len(report.assertions)} assertions, {elapsed:.2f}s)")
        else:
            failures += 1
            print(f"❌ {name} ({elapsed:.2f}s)")
            for a in report.assertions:
                if not a.ok:
                    print(f"   {a.label}: expected {a.expected}, got {a.actual}")
            if not chain["valid"]:
                print(f"   chain: {chain['error']}")

    print(f"\n✨ {len(names) - failures}/{len(names)} scenarios passed")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
