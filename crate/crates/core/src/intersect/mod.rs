//! Set intersection over sorted id lists and over bitmaps.

mod bitmap;
mod merge;

pub use bitmap::{
    bit_decode, bit_join, for_each_position, low_mask, popcount, words_for, BitWord,
    BitmapAdjacency, MaskTable,
};
pub use merge::{
    block_merge_intersect, block_merge_intersect_width, galloping_intersect, merge_intersect, BLOCK,
};
