# File: src/audit.py
# -------------------------
import os
import json
import time
from typing import Any, Dict, Optional, Sequence

from . import config


def record_audit(command: str, argv: Sequence[str], exit_code: int,
                 summary: Optional[Dict[str, Any]] = None, path: Optional[str] = None) -> Optional[str]:
    """Append one run to the JSONL ledger; no-op when no ledger path is configured."""
    path = path or config.AUDIT_FILE
    if not path:
        return None
    entry = {
        'timestamp': time.strftime('%Y-%m-%d %H:%M:%S'),
        'command': command,
        'argv': list(argv),
        'exit_code': int(exit_code),
        'summary': summary or {},
    }
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'a', encoding='utf-8') as f:
        f.write(json.dumps(entry, sort_keys=True, default=str) + '\n')
    return path
# -------------------------
