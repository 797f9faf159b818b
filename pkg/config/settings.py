"""Central configuration & tunable defaults.

Tunables are resolved in this order:
1. Streamlit secrets (st.secrets[...]) when the explorer is running.
2. Environment variables (LPA_SEED, LPA_SAMPLES, ...).
3. Fallback: the module defaults below.

Bad values never raise; they are logged and the default is used instead so a
typo in the environment cannot break a verification run.
"""

from __future__ import annotations

import logging
import os
from typing import Optional

try:  # Streamlit is only present for the explorer
	import streamlit as st  # type: ignore
except Exception:  # pragma: no cover - optional dependency environment
	st = None  # type: ignore

logger = logging.getLogger(__name__)


def _get_setting(name: str) -> Optional[str]:
	"""Attempt to read a setting from st.secrets then environment.

	Returns None if not found.
	"""
	# 1. Streamlit secrets
	if st is not None:
		try:
			if name in st.secrets:  # type: ignore[attr-defined]
				val = st.secrets.get(name)  # type: ignore[attr-defined]
				if val is not None and str(val).strip():
					return str(val).strip()
		except Exception:
			pass
	# 2. Environment variable
	val = os.getenv(name)
	if val and val.strip():
		return val.strip()
	return None


def _get_int(name: str, default: int, minimum: int = 0) -> int:
	raw = _get_setting(name)
	if raw is None:
		return default
	try:
		val = int(raw)
	except ValueError:
		logger.warning("ignoring %s=%r: not an integer, using %d", name, raw, default)
		return default
	if val < minimum:
		logger.warning("ignoring %s=%d: below %d, using %d", name, val, minimum, default)
		return default
	return val


# Defaults (overridable through the accessors below)
DEFAULT_SEED = 0
DEFAULT_SAMPLES = 50
SAMPLE_MAX_TERMS = 6
SAMPLE_MAX_PATH_LEN = 4
REDUCTION_ESCALATION = 2
PREIMAGE_SWEEP_MAX_LEN = 4
DEFAULT_LOG_LEVEL = "WARNING"

# Coefficients drawn by the samplers lie in [-SAMPLE_COEFF_BOUND, SAMPLE_COEFF_BOUND] minus 0
SAMPLE_COEFF_BOUND = 3

GRAPH_FILE_ENCODING = "utf-8"
LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


def get_default_seed() -> int:
	return _get_int("LPA_SEED", DEFAULT_SEED)


def get_default_samples() -> int:
	return _get_int("LPA_SAMPLES", DEFAULT_SAMPLES, minimum=1)


def get_max_terms() -> int:
	return _get_int("LPA_MAX_TERMS", SAMPLE_MAX_TERMS, minimum=1)


def get_max_path_len() -> int:
	return _get_int("LPA_MAX_PATH_LEN", SAMPLE_MAX_PATH_LEN)


def get_reduction_escalation() -> int:
	return _get_int("LPA_REDUCTION_ESCALATION", REDUCTION_ESCALATION)


def get_log_level() -> str:
	level = (_get_setting("LPA_LOG_LEVEL") or DEFAULT_LOG_LEVEL).upper()
	if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
		return DEFAULT_LOG_LEVEL
	return level


def configure_logging(level: Optional[str] = None) -> None:
	"""Install one stderr handler on the root logger.

	stdout is reserved for report text, so nothing here ever writes there.
	"""
	logging.basicConfig(
		level=(level or get_log_level()).upper(),
		format=LOG_FORMAT,
		force=True,
	)
