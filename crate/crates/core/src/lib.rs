//! Fibonacci words: generation under two conventions, factor and palindrome
//! census, exact letter densities, and the JSON/CSV analysis artifacts.
//!
//! ```
//! use fibword::{factors, generate::Convention, report};
//!
//! let fs = factors::saturated_factor_set(29, Convention::ConcatRule).unwrap();
//! let records = report::build_analysis_records(&fs);
//! let stats = report::summary(&records).unwrap();
//! assert_eq!(stats.total_records, 464);
//! assert_eq!(stats.all.avg0_rendered(), "0.3828");
//! ```

pub mod cli;
pub mod density;
pub mod error;
pub mod factors;
pub mod generate;
pub mod golden;
pub mod palindromes;
pub mod report;
pub mod verify;
pub mod word;

pub use error::{Error, Result};
pub use factors::FactorSet;
pub use generate::Convention;
pub use word::{Symbol, Word};
