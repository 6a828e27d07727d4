import sys
from pathlib import Path

# Ensure we can import the local package when running from the repository root
sys.path.insert(0, str(Path(__file__).parent))

from edgecut.cli import main

if __name__ == "__main__":
    main()
