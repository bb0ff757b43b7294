use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed color {0:?}: expected #RRGGBB or #RRGGBBAA")]
pub struct ColorParseError(pub String);

/// 8-bit RGBA color.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rgba {
    pub r: u8,
    pub g: u8,
    pub b: u8,
    pub a: u8,
}

impl Rgba {
    pub const WHITE: Rgba = Rgba::rgb(0xff, 0xff, 0xff);
    pub const BLACK: Rgba = Rgba::rgb(0, 0, 0);

    pub const fn rgb(r: u8, g: u8, b: u8) -> Self {
        Rgba { r, g, b, a: 0xff }
    }

    /// `#rrggbb`, ignoring alpha.
    pub fn hex_rgb(&self) -> String {
        format!("#{:02x}{:02x}{:02x}", self.r, self.g, self.b)
    }

    pub fn alpha_fraction(&self) -> f64 {
        f64::from(self.a) / 255.0
    }

    /// A darker shade used for circle outlines.
    pub fn darken(&self, factor: f64) -> Rgba {
        let f = |c: u8| (f64::from(c) * factor).round().clamp(0.0, 255.0) as u8;
        Rgba {
            r: f(self.r),
            g: f(self.g),
            b: f(self.b),
            a: self.a,
        }
    }
}

impl fmt::Display for Rgba {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.a == 0xff {
            write!(f, "{}", self.hex_rgb())
        } else {
            write!(f, "{}{:02x}", self.hex_rgb(), self.a)
        }
    }
}

impl FromStr for Rgba {
    type Err = ColorParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ColorParseError(s.to_string());
        let hex = s.trim().strip_prefix('#').ok_or_else(err)?;
        if !(hex.len() == 6 || hex.len() == 8) || !hex.chars().all(|c| c.is_ascii_hexdigit()) {
            return Err(err());
        }
        let byte = |i: usize| u8::from_str_radix(&hex[i..i + 2], 16).map_err(|_| err());
        Ok(Rgba {
            r: byte(0)?,
            g: byte(2)?,
            b: byte(4)?,
            a: if hex.len() == 8 { byte(6)? } else { 0xff },
        })
    }
}

/// Ten fixed, mutually distinguishable hues, assigned to sets in input order.
pub const DEFAULT_PALETTE: [Rgba; 10] = [
    Rgba::rgb(0xe6, 0x19, 0x4b),
    Rgba::rgb(0x3c, 0xb4, 0x4b),
    Rgba::rgb(0x43, 0x63, 0xd8),
    Rgba::rgb(0xff, 0xe1, 0x19),
    Rgba::rgb(0xf5, 0x82, 0x31),
    Rgba::rgb(0x91, 0x1e, 0xb4),
    Rgba::rgb(0x42, 0xd4, 0xf4),
    Rgba::rgb(0xf0, 0x32, 0xe6),
    Rgba::rgb(0x80, 0x80, 0x00),
    Rgba::rgb(0x00, 0x80, 0x80),
];

/// Palette color for the set at `index`, cycling past ten.
pub fn palette_color(index: usize) -> Rgba {
    DEFAULT_PALETTE[index % DEFAULT_PALETTE.len()]
}
