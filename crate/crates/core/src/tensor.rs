//! Minimal dense rank-4 tensor indexed `[x1][x2][a1][a2]`, row-major.

#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Tensor4 {
    dims: [usize; 4],
    data: Vec<f64>,
}

impl Tensor4 {
    pub fn new(dims: [usize; 4], data: Vec<f64>) -> Option<Self> {
        if dims.iter().product::<usize>() == data.len() {
            Some(Tensor4 { dims, data })
        } else {
            None
        }
    }

    pub fn zeros(dims: [usize; 4]) -> Self {
        Tensor4 {
            dims,
            data: vec![0.0; dims.iter().product()],
        }
    }

    pub fn dims(&self) -> [usize; 4] {
        self.dims
    }

    #[inline]
    pub fn offset(&self, x1: usize, x2: usize, a1: usize, a2: usize) -> usize {
        ((x1 * self.dims[1] + x2) * self.dims[2] + a1) * self.dims[3] + a2
    }

    #[inline]
    pub fn at(&self, x1: usize, x2: usize, a1: usize, a2: usize) -> f64 {
        self.data[self.offset(x1, x2, a1, a2)]
    }

    #[inline]
    pub fn at_mut(&mut self, x1: usize, x2: usize, a1: usize, a2: usize) -> &mut f64 {
        let i = self.offset(x1, x2, a1, a2);
        &mut self.data[i]
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    /// Iterates `([x1, x2, a1, a2], value)` in row-major order.
    pub fn indexed(&self) -> impl Iterator<Item = ([usize; 4], f64)> + '_ {
        let [_, d1, d2, d3] = self.dims;
        self.data.iter().enumerate().map(move |(i, &v)| {
            let a2 = i % d3;
            let a1 = (i / d3) % d2;
            let x2 = (i / (d3 * d2)) % d1;
            let x1 = i / (d3 * d2 * d1);
            ([x1, x2, a1, a2], v)
        })
    }
}
