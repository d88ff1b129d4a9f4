"""
DOM-block segmentation of HTML pages.

A page is cut into maximal block-level subtrees under <body> carrying at
least min_tokens renderable tokens. A qualifying block is split further
when its own qualifying block children cover all of its content, or when
it has two or more of them. Non-block wrappers (form, center, span, ...)
around qualifying blocks are looked through. Content left over at any
level, text nodes and images with alt text, is swept into a residue
segment for that parent, so every renderable text node lands in exactly
one segment and no segment contains another.

All tree walks use explicit stacks; nesting depth is bounded only by
the parser.
"""
import logging
from dataclasses import dataclass, field

import xxhash
from bs4 import BeautifulSoup
from bs4.element import NavigableString, PreformattedString, Tag

from museum.models.page import PageSnapshot, Segment
from museum.services.lexicon import tokenize
from museum.utils.errors import DecodeFailure, EmptyDocument

logger = logging.getLogger(__name__)

# Subtrees whose text is never rendered as page content
NON_RENDERABLE = frozenset({'script', 'style', 'noscript', 'template', 'head', 'title'})

# Markup tag -> visual markup class
MARKUP_CLASSES = {
    'h1': 'h1',
    'h2': 'h2',
    'h3': 'h3',
    'h4': 'h4',
    'h5': 'h5',
    'h6': 'h6',
    'b': 'bold',
    'strong': 'bold',
    'em': 'italic',
    'i': 'italic',
    'u': 'underline',
    'mark': 'mark',
}

RESIDUE = '#residue'
BODY_PATH = '/html/body'


def fingerprint_segment(dom_path, text_tokens):
    """
    Stable 128-bit identifier of a segment.

    XXH3-128 over the DOM path, a newline, then the sorted tokens joined
    by newlines.

    Returns:
        str: 32 lowercase hex digits
    """
    payload = dom_path + '\n' + '\n'.join(sorted(text_tokens))
    return xxhash.xxh3_128_hexdigest(payload.encode('utf-8'))


def decode_html(html):
    """
    Lossy UTF-8 decode of page bytes.

    Raises:
        DecodeFailure: input is not text-like (wrong type or binary data)
        EmptyDocument: input is empty or whitespace only
    """
    if isinstance(html, str):
        text = html
    elif isinstance(html, (bytes, bytearray, memoryview)):
        text = bytes(html).decode('utf-8', errors='replace')
    else:
        raise DecodeFailure(f'Cannot decode page of type {type(html).__name__}')

    if '\x00' in text:
        raise DecodeFailure('Page contains NUL bytes; not an HTML document')
    if not text.strip():
        raise EmptyDocument('Page is empty')
    return text


def parse_document(html):
    """Parse HTML tolerantly; malformed markup is repaired by lxml."""
    return BeautifulSoup(decode_html(html), 'lxml')


def is_renderable_text(node):
    """Plain text node with visible characters (comments, doctypes excluded)."""
    return (
        isinstance(node, NavigableString)
        and not isinstance(node, PreformattedString)
        and bool(node.strip())
    )


def iter_renderable_text(root):
    """Renderable text nodes under root in document order."""
    stack = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, Tag):
            if node.name in NON_RENDERABLE:
                continue
            stack.extend(reversed(list(node.children)))
        elif is_renderable_text(node):
            yield node


def has_alt_text(node, stopwords):
    """An <img> whose alt attribute yields at least one token."""
    return node.name == 'img' and bool(tokenize(node.get('alt') or '', stopwords))


def iter_content_nodes(root, stopwords):
    """Renderable text nodes and alt-bearing images under root in document order."""
    stack = [root]
    while stack:
        node = stack.pop()
        if isinstance(node, Tag):
            if node.name in NON_RENDERABLE:
                continue
            if has_alt_text(node, stopwords):
                yield node
            stack.extend(reversed(list(node.children)))
        elif is_renderable_text(node):
            yield node


def _child_elements_with_paths(container, path):
    """Children of container with their slash-joined ordinal paths."""
    counts = {}
    for child in container.children:
        if isinstance(child, Tag):
            counts[child.name] = counts.get(child.name, 0) + 1
            yield child, f'{path}/{child.name}[{counts[child.name]}]'
        else:
            yield child, None


@dataclass
class Block:
    """A segment before tokenization: its path and the DOM nodes it owns."""

    dom_path: str
    roots: list = field(default_factory=list)

    def text_nodes(self):
        for root in self.roots:
            if isinstance(root, Tag):
                yield from iter_renderable_text(root)
            elif is_renderable_text(root):
                yield root

    def content_nodes(self, stopwords):
        for root in self.roots:
            if isinstance(root, Tag):
                yield from iter_content_nodes(root, stopwords)
            elif is_renderable_text(root):
                yield root


@dataclass(frozen=True)
class Extent:
    """Content under one element."""

    tokens: int = 0  # renderable text tokens
    units: int = 0  # text nodes plus alt-bearing images
    nested: bool = False  # some descendant qualifies as a block


class _Partitioner:
    """One partition run over a parsed document."""

    def __init__(self, cfg):
        self.cfg = cfg
        self.block_elements = frozenset(cfg.block_elements)
        self._extents = {}

    def measure(self, root):
        """Record the Extent of root and every renderable element below it."""
        stack = [(root, False)]
        while stack:
            element, children_done = stack.pop()
            if not children_done:
                stack.append((element, True))
                stack.extend(
                    (child, False) for child in element.children
                    if isinstance(child, Tag) and child.name not in NON_RENDERABLE
                )
                continue

            tokens = units = 0
            nested = False
            if has_alt_text(element, self.cfg.stopwords):
                units += 1
            for child in element.children:
                if isinstance(child, Tag):
                    if child.name in NON_RENDERABLE:
                        continue
                    extent = self._extents[id(child)]
                    tokens += extent.tokens
                    units += extent.units
                    nested = nested or extent.nested or self.qualifies(child)
                elif is_renderable_text(child):
                    tokens += len(tokenize(str(child), self.cfg.stopwords))
                    units += 1
            self._extents[id(element)] = Extent(tokens, units, nested)

    def extent(self, element):
        return self._extents[id(element)]

    def qualifies(self, element):
        if element.name not in self.block_elements:
            return False
        extent = self.extent(element)
        return extent.units > 0 and extent.tokens >= self.cfg.min_tokens

    def splits(self, element):
        """A block splits when its block children carry all its content, or there are two or more."""
        qualifying = [
            child for child in element.children
            if isinstance(child, Tag) and child.name not in NON_RENDERABLE and self.qualifies(child)
        ]
        if not qualifying:
            return False
        covered = sum(self.extent(child).units for child in qualifying)
        return len(qualifying) >= 2 or covered == self.extent(element).units

    def run(self, body):
        self.measure(body)
        blocks = []
        pending = [(body, BODY_PATH, False)]

        while pending:
            element, path, is_block = pending.pop()
            if is_block and not self.splits(element):
                blocks.append(Block(path, [element]))
                continue

            # element is a container: body, a split block or a wrapper around blocks
            residue = []
            descended = False
            for child, child_path in _child_elements_with_paths(element, path):
                if isinstance(child, Tag):
                    if child.name in NON_RENDERABLE:
                        continue
                    extent = self.extent(child)
                    if self.qualifies(child):
                        pending.append((child, child_path, True))
                        descended = True
                    elif extent.nested:
                        pending.append((child, child_path, False))
                        descended = True
                    elif extent.units > 0:
                        residue.append(child)
                elif is_renderable_text(child):
                    residue.append(child)

            if residue:
                blocks.append(Block(f'{path}/{RESIDUE}' if descended else path, residue))

        return blocks


def partition(soup, cfg):
    """
    Partition a parsed document into blocks in document order.

    Returns:
        list of Block

    Raises:
        EmptyDocument: the document has no renderable text nodes
    """
    body = soup.body
    if body is None:
        raise EmptyDocument('Document has no body')
    if next(iter_renderable_text(body), None) is None:
        raise EmptyDocument('Document has no renderable text')

    order = {id(node): position for position, node in enumerate(iter_content_nodes(body, cfg.stopwords))}
    blocks = _Partitioner(cfg).run(body)
    blocks.sort(key=lambda block: min(order[id(node)] for node in block.content_nodes(cfg.stopwords)))
    return blocks


def _collect(root, cfg, acc):
    stack = [(root, frozenset(), False)]
    while stack:
        node, classes, in_link = stack.pop()
        if isinstance(node, Tag):
            if node.name in NON_RENDERABLE:
                continue
            if node.name == 'img':
                acc['alt'].update(tokenize(node.get('alt') or '', cfg.stopwords))
            markup = MARKUP_CLASSES.get(node.name)
            if markup is not None:
                classes = classes | {markup}
            in_link = in_link or node.name == 'a'
            stack.extend((child, classes, in_link) for child in node.children)
        elif is_renderable_text(node):
            tokens = tokenize(str(node), cfg.stopwords)
            acc['text'].update(tokens)
            if in_link:
                acc['link'].update(tokens)
            for markup in classes:
                acc['spans'].setdefault(markup, set()).update(tokens)


def build_segment(block, cfg):
    """Tokenize a block into a Segment."""
    acc = {'text': set(), 'link': set(), 'alt': set(), 'spans': {}}
    for root in block.roots:
        _collect(root, cfg, acc)

    text_tokens = frozenset(acc['text'])
    return Segment(
        fingerprint=fingerprint_segment(block.dom_path, text_tokens),
        dom_path=block.dom_path,
        text_tokens=text_tokens,
        link_tokens=frozenset(acc['link']),
        image_alt_tokens=frozenset(acc['alt']),
        visual_spans=acc['spans'],
    )


def title_tokens(soup, cfg):
    title = soup.head.find('title') if soup.head is not None else None
    if title is None:
        title = soup.find('title')
    if title is None:
        return frozenset()
    return frozenset(tokenize(title.get_text(' '), cfg.stopwords))


def segment_page(page, cfg):
    """
    Parse a raw page into a PageSnapshot.

    Deterministic: identical bytes and config give identical segments,
    fingerprints and ordering.

    Args:
        page: RawPage
        cfg: SegmenterConfig

    Returns:
        PageSnapshot with segments in document order
    """
    soup = parse_document(page.html)
    blocks = partition(soup, cfg)
    segments = tuple(build_segment(block, cfg) for block in blocks)

    logger.debug(f'Segmented {page.url} into {len(segments)} segments')

    return PageSnapshot(
        url=page.url,
        captured_at=page.fetched_at,
        title_tokens=title_tokens(soup, cfg),
        segments=segments,
    )
