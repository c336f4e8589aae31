use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use riemann_core::Image;

#[derive(Debug, thiserror::Error)]
pub enum ImageError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("PNG encoding failed: {0}")]
    Encoding(#[from] png::EncodingError),
}

/// Encodes as 8-bit RGB without alpha.
pub fn encode_png<W: Write>(image: &Image, out: W) -> Result<(), png::EncodingError> {
    let mut encoder = png::Encoder::new(out, image.width as u32, image.height as u32);
    encoder.set_color(png::ColorType::Rgb);
    encoder.set_depth(png::BitDepth::Eight);
    let mut writer = encoder.write_header()?;
    writer.write_image_data(&image.to_rgb8())?;
    writer.finish()
}

pub fn write_png(image: &Image, path: &Path) -> Result<(), ImageError> {
    let file = File::create(path).map_err(|source| ImageError::Io {
        path: path.display().to_string(),
        source,
    })?;
    encode_png(image, BufWriter::new(file))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use riemann_core::Rgb;

    #[test]
    fn png_bytes_decode_back() {
        let image = Image {
            width: 2,
            height: 1,
            pixels: vec![Rgb::new(1.0, 0.0, 0.0), Rgb::new(0.0, 0.5, 1.0)],
        };
        let mut bytes = Vec::new();
        encode_png(&image, &mut bytes).unwrap();
        let decoder = png::Decoder::new(std::io::Cursor::new(bytes));
        let mut reader = decoder.read_info().unwrap();
        let mut buf = vec![0; reader.output_buffer_size().unwrap()];
        let info = reader.next_frame(&mut buf).unwrap();
        assert_eq!(info.color_type, png::ColorType::Rgb);
        assert_eq!((info.width, info.height), (2, 1));
        assert_eq!(&buf[..6], &[255, 0, 0, 0, 128, 255]);
    }
}
