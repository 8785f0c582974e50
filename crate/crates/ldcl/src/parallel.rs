//! Parallel per-set compression and reconstruction.
//!
//! Sets are independent, so the per-set work fans out across threads; the
//! results are collected in set order, which makes the output byte-identical
//! to the sequential path.

use ldcl_core::matrix::{
    self, Archive, CodecParams, LogMatrix, SetCompressor, SetReconstructor,
};
use ldcl_core::sequence;
use ldcl_core::{BitSequence, CodecError};
use rayon::prelude::*;

/// Drop-in parallel equivalent of [`ldcl_core::matrix::compress`].
pub fn compress(input: &BitSequence, params: &CodecParams) -> Result<Archive, CodecError> {
    let mapped = sequence::map_bits(input);
    let rle = sequence::rle_encode(&mapped);
    let sets = matrix::decompose_sets(&rle, params.set_size);
    let compressor = SetCompressor::new(*params);
    let records = sets
        .par_iter()
        .map(|s| compressor.compress_set(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Archive {
        params: *params,
        odd_pad: mapped.odd_pad,
        original_bit_len: input.len() as u64,
        mapped_digit_len: mapped.digits.len() as u64,
        matrix: LogMatrix { records },
    })
}

/// Drop-in parallel equivalent of [`ldcl_core::matrix::decompress`].
pub fn decompress(archive: &Archive) -> BitSequence {
    let reconstructor = SetReconstructor::new(archive.params);
    let sets: Vec<Vec<u8>> = archive
        .matrix
        .records
        .par_iter()
        .map(|r| reconstructor.reconstruct_set(r))
        .collect();
    let titan = matrix::assemble_titan(&sets);
    let rle = matrix::repair_digits(&titan, archive.matrix.stream_len());
    let mut mapped = sequence::rle_decode(&rle).expect("repair yields a valid stream");
    mapped.odd_pad = archive.odd_pad;
    let mut bits = sequence::unmap_digits(&mapped).expect("rle_decode yields mapped digits");
    bits.resize(archive.original_bit_len as usize);
    bits
}
