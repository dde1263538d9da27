"""
Access to the ROOT_EXTRACTION settings dict with package defaults.

Falls back to the defaults when Django settings are not configured, so the
arithmetic modules stay usable as a plain library.
"""
from pathlib import Path

from django.conf import settings
from django.core.exceptions import ImproperlyConfigured

DEFAULTS = {
    'BASIS_RETRY_LIMIT': 256,
    'PAIRING_RETRY_LIMIT': 32,
    'COSET_SEARCH_LIMIT': 4096,
    'PRIMALITY_ROUNDS': 64,
    'F_MAX': 10000,
    'BRUTE_FORCE_LIMIT': 32,
    'EXISTENCE_TABLE_LIMIT': 16,
    'GOLDEN_DIR': Path(__file__).resolve().parent / 'golden',
    'QUICK_SELFTEST_SECONDS': 10,
}


class RootExtractionSettings:
    """Lazy settings object; user values override DEFAULTS key by key."""

    def __init__(self, defaults=None):
        self.defaults = defaults or DEFAULTS

    @property
    def user_settings(self):
        try:
            return getattr(settings, 'ROOT_EXTRACTION', {})
        except ImproperlyConfigured:
            return {}

    def __getattr__(self, attr):
        if attr not in self.defaults:
            raise AttributeError(f"Invalid root extraction setting: '{attr}'")
        return self.user_settings.get(attr, self.defaults[attr])


grep_settings = RootExtractionSettings()
