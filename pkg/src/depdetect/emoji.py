"""Emoji detection over extended-pictographic codepoint ranges.

Sequences joined by U+200D (ZWJ) are grouped as a single emoji, and
variation selectors / skin-tone modifiers attach to the preceding base
character. Regional-indicator pairs (flags) also count as one emoji.
"""

from __future__ import annotations

# Principal Extended_Pictographic blocks plus regional indicators.
_EMOJI_RANGES = (
    (0x1F300, 0x1F5FF),  # misc symbols & pictographs
    (0x1F600, 0x1F64F),  # emoticons
    (0x1F680, 0x1F6FF),  # transport & map
    (0x1F700, 0x1F8FF),
    (0x1F900, 0x1F9FF),  # supplemental symbols
    (0x1FA00, 0x1FAFF),  # symbols extended-A
    (0x2600, 0x26FF),    # misc symbols
    (0x2700, 0x27BF),    # dingbats
    (0x2B00, 0x2BFF),    # arrows, stars
    (0x1F1E6, 0x1F1FF),  # regional indicators
)

_ZWJ = 0x200D
_VARIATION_SELECTORS = (0xFE0E, 0xFE0F)
_SKIN_TONES = (0x1F3FB, 0x1F3FF)

_RI_LO, _RI_HI = 0x1F1E6, 0x1F1FF


def is_emoji_char(ch: str) -> bool:
    """True for emoji base characters (not joiners/modifiers)."""
    cp = ord(ch)
    return any(lo <= cp <= hi for lo, hi in _EMOJI_RANGES)


def is_emoji_component(ch: str) -> bool:
    """True for characters that extend an emoji sequence (ZWJ, VS, skin tone)."""
    cp = ord(ch)
    return cp == _ZWJ or cp in _VARIATION_SELECTORS or _SKIN_TONES[0] <= cp <= _SKIN_TONES[1]


def extract_emoji(text: str) -> list[str]:
    """Return emoji sequences in order of appearance, duplicates preserved."""
    out: list[str] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if not is_emoji_char(ch):
            i += 1
            continue
        j = i + 1
        # flags: exactly two regional indicators form one emoji
        if _RI_LO <= ord(ch) <= _RI_HI and j < n and _RI_LO <= ord(text[j]) <= _RI_HI:
            j += 1
        else:
            while j < n:
                if is_emoji_component(text[j]):
                    # a ZWJ must be followed by another pictographic char
                    if ord(text[j]) == _ZWJ:
                        if j + 1 < n and is_emoji_char(text[j + 1]):
                            j += 2
                        else:
                            break
                    else:
                        j += 1
                else:
                    break
        out.append(text[i:j])
        i = j
    return out
