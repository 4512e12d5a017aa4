#
# emoji_matrix.py
#
"""
Domain-Action-Status emoji mappings for complementarity log events, and a
helper to print the active contract.
"""

PRIMARY_EMOJI: dict[str, str] = {
    "qmat": "🧮", "basis": "🧭", "state": "⚛️", "correlation": "🔗",
    "criterion": "🔬", "sweep": "📈", "montecarlo": "🎲", "optimize": "🎯",
    "export": "💾", "cli": "⌨️", "config": "🔩",
    "default": "❓",
}

SECONDARY_EMOJI: dict[str, str] = {
    "build": "🏗️", "sample": "🎰", "measure": "📏", "detect": "🔍",
    "merge": "🧩", "run": "▶️", "write": "📝", "parse": "📖",
    "validate": "🛡️", "optimize": "🎚️",
    "default": "❓",
}

TERTIARY_EMOJI: dict[str, str] = {
    "success": "✅", "failure": "❌", "finding": "🚩", "skip": "⏭️",
    "start": "🚀", "complete": "🏁", "warning": "⚠️",
    "default": "➡️",
}

def emoji_contract_lines() -> list[str]:
    """Human-readable listing of the DAS emoji contract."""
    lines = ["Complementarity DAS Emoji Contract", "=" * 40, "Domains ('domain' key):"]
    lines.extend(f"  {e}  -> {k.capitalize()}" for k, e in PRIMARY_EMOJI.items())
    lines.append("Actions ('action' key):")
    lines.extend(f"  {e}  -> {k.capitalize()}" for k, e in SECONDARY_EMOJI.items())
    lines.append("Statuses ('status' key):")
    lines.extend(f"  {e}  -> {k.capitalize()}" for k, e in TERTIARY_EMOJI.items())
    return lines

# 💡🧱
