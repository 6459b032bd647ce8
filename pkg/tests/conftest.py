import sys
from pathlib import Path

# allow `import _reference` from any invocation directory
sys.path.insert(0, str(Path(__file__).parent))
