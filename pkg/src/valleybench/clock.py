"""In-game clock and calendar.

A day runs from 6:00 AM to 2:00 AM the next calendar day, tracked as
minutes since 6 AM in [0, 1200].  The calendar cycles four 28-day seasons.
The engine's atomic time unit is a tick of 10 in-game minutes.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

DAY_START_MINUTE = 0
DAY_END_MINUTE = 1200  # 2:00 AM
MIDNIGHT_MINUTE = 1080
DAYS_PER_SEASON = 28
MINUTES_PER_TICK = 10


class Season(str, Enum):
    SPRING = "spring"
    SUMMER = "summer"
    FALL = "fall"
    WINTER = "winter"

    def next(self) -> "Season":
        order = [Season.SPRING, Season.SUMMER, Season.FALL, Season.WINTER]
        return order[(order.index(self) + 1) % 4]


@dataclass(slots=True)
class GameClock:
    minutes_since_6am: int = 0
    day_of_season: int = 1
    season: Season = Season.SPRING
    year: int = 1

    def __post_init__(self) -> None:
        if not 0 <= self.minutes_since_6am <= DAY_END_MINUTE:
            raise ValueError(f"minutes_since_6am out of range: {self.minutes_since_6am}")
        if not 1 <= self.day_of_season <= DAYS_PER_SEASON:
            raise ValueError(f"day_of_season out of range: {self.day_of_season}")
        if self.year < 1:
            raise ValueError("year must be >= 1")

    @property
    def past_midnight(self) -> bool:
        return self.minutes_since_6am >= MIDNIGHT_MINUTE

    def formatted(self) -> str:
        """Clock face as "hh:mm AM/PM"."""
        total = (6 * 60 + self.minutes_since_6am) % (24 * 60)
        hour24, minute = divmod(total, 60)
        suffix = "AM" if hour24 < 12 else "PM"
        hour12 = hour24 % 12 or 12
        return f"{hour12:02d}:{minute:02d} {suffix}"

    def advance_day(self) -> None:
        """Roll the calendar one day forward and reset to 6:00 AM."""
        self.minutes_since_6am = DAY_START_MINUTE
        if self.day_of_season < DAYS_PER_SEASON:
            self.day_of_season += 1
            return
        self.day_of_season = 1
        self.season = self.season.next()
        if self.season is Season.SPRING:
            self.year += 1

    def to_dict(self) -> dict:
        return {
            "minutes_since_6am": self.minutes_since_6am,
            "day_of_season": self.day_of_season,
            "season": self.season.value,
            "year": self.year,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "GameClock":
        return cls(
            minutes_since_6am=data["minutes_since_6am"],
            day_of_season=data["day_of_season"],
            season=Season(data["season"]),
            year=data["year"],
        )


def clock_time_to_minutes(clock_time: int) -> int:
    """Convert an HHMM-style value (e.g. 900 for 9:00 AM, 2600 for 2:00 AM)
    to minutes since 6 AM.  Values must land inside the 6 AM - 2 AM day."""
    hour, minute = divmod(clock_time, 100)
    if minute >= 60:
        raise ValueError(f"bad minutes in clock time {clock_time}")
    total = hour * 60 + minute - 6 * 60
    if not 0 <= total <= DAY_END_MINUTE:
        raise ValueError(f"clock time {clock_time} outside the 6AM-2AM day")
    return total
