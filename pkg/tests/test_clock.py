from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from valleybench.clock import GameClock, Season, clock_time_to_minutes


def test_day_start_reads_6am():
    assert GameClock().formatted() == "06:00 AM"


@pytest.mark.parametrize(
    "minutes,expected",
    [
        (0, "06:00 AM"),
        (10, "06:10 AM"),
        (360, "12:00 PM"),
        (720, "06:00 PM"),
        (1080, "12:00 AM"),
        (1140, "01:00 AM"),
        (1200, "02:00 AM"),
    ],
)
def test_formatting_fixed_points(minutes, expected):
    assert GameClock(minutes_since_6am=minutes).formatted() == expected


@given(st.integers(min_value=0, max_value=1200))
def test_formatting_shape(minutes):
    text = GameClock(minutes_since_6am=minutes).formatted()
    hh, rest = text.split(":")
    mm, suffix = rest.split(" ")
    assert len(hh) == 2 and len(mm) == 2
    assert 1 <= int(hh) <= 12
    assert 0 <= int(mm) <= 59
    assert suffix in ("AM", "PM")


def test_clock_rejects_out_of_range():
    with pytest.raises(ValueError):
        GameClock(minutes_since_6am=1201)
    with pytest.raises(ValueError):
        GameClock(day_of_season=0)
    with pytest.raises(ValueError):
        GameClock(day_of_season=29)


def test_season_rollover_day28():
    clock = GameClock(day_of_season=28, season=Season.SPRING)
    clock.advance_day()
    assert clock.day_of_season == 1
    assert clock.season is Season.SUMMER
    assert clock.year == 1


def test_year_rollover_after_winter():
    clock = GameClock(day_of_season=28, season=Season.WINTER, year=1)
    clock.advance_day()
    assert clock.season is Season.SPRING
    assert clock.year == 2


@given(st.integers(min_value=0, max_value=400))
def test_calendar_closed_under_rollover(days):
    clock = GameClock()
    for _ in range(days):
        clock.advance_day()
    assert 1 <= clock.day_of_season <= 28
    assert clock.year >= 1


@pytest.mark.parametrize(
    "value,expected",
    [(600, 0), (900, 180), (1500, 540), (2400, 1080), (2600, 1200)],
)
def test_clock_time_conversion(value, expected):
    assert clock_time_to_minutes(value) == expected


def test_clock_time_conversion_rejects_bad_values():
    with pytest.raises(ValueError):
        clock_time_to_minutes(599)
    with pytest.raises(ValueError):
        clock_time_to_minutes(2601)
    with pytest.raises(ValueError):
        clock_time_to_minutes(975)
