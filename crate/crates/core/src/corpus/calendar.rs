//! Normalized calendar values at day, month or year granularity.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Precision of a [`CalendarValue`], from coarsest to finest.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Granularity {
    Year,
    Month,
    Day,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalendarError {
    #[error("unsupported calendar value `{0}`")]
    Unsupported(String),
    #[error("month {month} out of range in `{value}`")]
    Month { value: String, month: u32 },
    #[error("day {day} out of range in `{value}`")]
    Day { value: String, day: u32 },
}

/// A date at YEAR, MONTH or DAY precision.
///
/// Equality is exact on granularity and fields, so `2015-01` and `2015-01-05`
/// are different values. The total order sorts by year, then month, then day,
/// with a coarser value placed before every finer value it contains.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CalendarValue {
    year: i32,
    month: Option<u8>,
    day: Option<u8>,
}

pub fn is_leap_year(year: i32) -> bool {
    (year % 4 == 0 && year % 100 != 0) || year % 400 == 0
}

pub fn days_in_month(year: i32, month: u8) -> u8 {
    match month {
        1 | 3 | 5 | 7 | 8 | 10 | 12 => 31,
        4 | 6 | 9 | 11 => 30,
        2 if is_leap_year(year) => 29,
        2 => 28,
        _ => 0,
    }
}

impl CalendarValue {
    pub fn year(year: i32) -> Self {
        Self { year, month: None, day: None }
    }

    pub fn month(year: i32, month: u8) -> Option<Self> {
        (1..=12)
            .contains(&month)
            .then_some(Self { year, month: Some(month), day: None })
    }

    pub fn day(year: i32, month: u8, day: u8) -> Option<Self> {
        let valid = (1..=12).contains(&month) && day >= 1 && day <= days_in_month(year, month);
        valid.then_some(Self { year, month: Some(month), day: Some(day) })
    }

    pub fn granularity(&self) -> Granularity {
        match (self.month, self.day) {
            (_, Some(_)) => Granularity::Day,
            (Some(_), None) => Granularity::Month,
            (None, None) => Granularity::Year,
        }
    }

    pub fn year_value(&self) -> i32 {
        self.year
    }

    pub fn month_value(&self) -> Option<u8> {
        self.month
    }

    pub fn day_value(&self) -> Option<u8> {
        self.day
    }

    /// Drops fields finer than `granularity`. Coarser values are returned as is.
    pub fn truncate(&self, granularity: Granularity) -> Self {
        match granularity {
            Granularity::Day => *self,
            Granularity::Month => Self { day: None, ..*self },
            Granularity::Year => Self::year(self.year),
        }
    }

    /// Parses a TimeML `VALUE`. Accepts `YYYY`, `YYYY-MM`, `YYYY-MM-DD` and
    /// full timestamps (`YYYY-MM-DDThh:mm...`), which are truncated to the day.
    pub fn parse(text: &str) -> Result<Self, CalendarError> {
        let unsupported = || CalendarError::Unsupported(text.to_string());
        let date = match text.find('T') {
            Some(pos) if pos == 10 => &text[..pos],
            Some(_) => return Err(unsupported()),
            None => text,
        };
        let mut parts = date.split('-');
        let year_part = parts.next().ok_or_else(unsupported)?;
        if year_part.len() != 4 || !year_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(unsupported());
        }
        let year: i32 = year_part.parse().map_err(|_| unsupported())?;
        let mut field = |len: usize| -> Result<Option<u32>, CalendarError> {
            match parts.next() {
                None => Ok(None),
                Some(p) if p.len() == len && p.bytes().all(|b| b.is_ascii_digit()) => {
                    Ok(Some(p.parse().map_err(|_| unsupported())?))
                }
                Some(_) => Err(unsupported()),
            }
        };
        let month = field(2)?;
        let day = if month.is_some() { field(2)? } else { None };
        if parts.next().is_some() {
            return Err(unsupported());
        }
        match (month, day) {
            (None, _) => Ok(Self::year(year)),
            (Some(m), None) => Self::month(year, m as u8).ok_or(CalendarError::Month {
                value: text.to_string(),
                month: m,
            }),
            (Some(m), Some(d)) => {
                if !(1..=12).contains(&m) {
                    return Err(CalendarError::Month { value: text.to_string(), month: m });
                }
                Self::day(year, m as u8, d as u8)
                    .ok_or(CalendarError::Day { value: text.to_string(), day: d })
            }
        }
    }
}

impl Ord for CalendarValue {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.year, self.month.unwrap_or(0), self.day.unwrap_or(0)).cmp(&(
            other.year,
            other.month.unwrap_or(0),
            other.day.unwrap_or(0),
        ))
    }
}

impl PartialOrd for CalendarValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CalendarValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}", self.year)?;
        if let Some(m) = self.month {
            write!(f, "-{m:02}")?;
        }
        if let Some(d) = self.day {
            write!(f, "-{d:02}")?;
        }
        Ok(())
    }
}

impl FromStr for CalendarValue {
    type Err = CalendarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl Serialize for CalendarValue {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CalendarValue {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        Self::parse(&text).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_each_granularity() {
        assert_eq!(CalendarValue::parse("2015").unwrap().granularity(), Granularity::Year);
        assert_eq!(CalendarValue::parse("2015-03").unwrap().granularity(), Granularity::Month);
        let d = CalendarValue::parse("2015-03-14").unwrap();
        assert_eq!(d.granularity(), Granularity::Day);
        assert_eq!(d.to_string(), "2015-03-14");
    }

    #[test]
    fn times_of_day_truncate_to_day() {
        let v = CalendarValue::parse("2015-03-14T10:30").unwrap();
        assert_eq!(v, CalendarValue::day(2015, 3, 14).unwrap());
    }

    #[test]
    fn rejects_invalid_dates() {
        assert!(CalendarValue::parse("2015-02-29").is_err());
        assert!(CalendarValue::parse("2016-02-29").is_ok());
        assert!(CalendarValue::parse("1900-02-29").is_err());
        assert!(CalendarValue::parse("2000-02-29").is_ok());
        assert!(CalendarValue::parse("2015-13").is_err());
        assert!(CalendarValue::parse("2015-04-31").is_err());
        assert!(CalendarValue::parse("PRESENT_REF").is_err());
        assert!(CalendarValue::parse("2015-W02").is_err());
        assert!(CalendarValue::parse("15-01-01").is_err());
        assert!(CalendarValue::parse("").is_err());
    }

    #[test]
    fn coarser_values_sort_first() {
        let y = CalendarValue::year(2015);
        let m = CalendarValue::month(2015, 1).unwrap();
        let d = CalendarValue::day(2015, 1, 5).unwrap();
        let later = CalendarValue::day(2015, 1, 6).unwrap();
        assert!(y < m && m < d && d < later);
        assert_ne!(m, d);
        assert_eq!(d.truncate(Granularity::Month), m);
        assert_eq!(y.truncate(Granularity::Day), y);
    }
}
