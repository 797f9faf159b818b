# ui/components.py
import streamlit as st

from utils.checks import Report
from utils.frames import report_frame


def show_report(report: Report):
    """Display a verification report as a pass/fail banner plus a table."""
    st.subheader(report.title)
    if report.ok:
        st.success(f"✅ All {len(report.checks)} checks pass")
    else:
        st.error(f"❌ {len(report.failures)} of {len(report.checks)} checks fail")
    for line in report.header:
        st.caption(line.lstrip("# "))
    st.dataframe(report_frame(report), width='stretch', hide_index=True)


def show_element(label: str, text: str):
    st.markdown(f"**{label}**")
    st.code(text, language=None)
