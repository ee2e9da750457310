#include "defectpred/jdk_types.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace defectpred::code {

namespace {

// One package per line: "package: Name Name ...". Curated from the JDK 8
// class library; covers the classes commonly referenced by the kind of
// code this tool analyzes. Extend here when a resolution gap shows up.
constexpr const char* kTable = R"(
java.lang: Appendable AutoCloseable Boolean Byte CharSequence Character Class ClassLoader ClassNotFoundException CloneNotSupportedException Cloneable Comparable Deprecated Double Enum Error Exception Float FunctionalInterface IllegalAccessException IllegalArgumentException IllegalStateException IndexOutOfBoundsException InstantiationException Integer InterruptedException Iterable Long Math NegativeArraySizeException NoClassDefFoundError NoSuchFieldException NoSuchMethodException NullPointerException Number NumberFormatException Object OutOfMemoryError Override Package Process ProcessBuilder Readable Runnable Runtime RuntimeException SafeVarargs SecurityException Short StackOverflowError StackTraceElement StrictMath String StringBuffer StringBuilder SuppressWarnings System Thread ThreadLocal Throwable UnsupportedOperationException Void ArithmeticException ArrayIndexOutOfBoundsException ArrayStoreException AssertionError ClassCastException StringIndexOutOfBoundsException
java.lang.annotation: Annotation Documented ElementType Inherited Retention RetentionPolicy Target
java.lang.ref: PhantomReference Reference ReferenceQueue SoftReference WeakReference
java.lang.reflect: AccessibleObject Array Constructor Field GenericArrayType InvocationHandler InvocationTargetException Member Method Modifier ParameterizedType Proxy Type TypeVariable WildcardType
java.io: BufferedInputStream BufferedOutputStream BufferedReader BufferedWriter ByteArrayInputStream ByteArrayOutputStream CharArrayReader CharArrayWriter Closeable DataInput DataInputStream DataOutput DataOutputStream EOFException Externalizable File FileDescriptor FileFilter FileInputStream FileNotFoundException FileOutputStream FilePermission FileReader FileWriter FilenameFilter FilterInputStream FilterOutputStream Flushable IOException InputStream InputStreamReader InterruptedIOException LineNumberReader NotSerializableException ObjectInputStream ObjectOutputStream ObjectStreamException OutputStream OutputStreamWriter PipedInputStream PipedOutputStream PrintStream PrintWriter PushbackInputStream PushbackReader RandomAccessFile Reader SequenceInputStream Serializable StreamTokenizer StringReader StringWriter UTFDataFormatException UnsupportedEncodingException Writer
java.util: AbstractCollection AbstractList AbstractMap AbstractSet ArrayDeque ArrayList Arrays BitSet Calendar Collection Collections Comparator ConcurrentModificationException Currency Date Deque Dictionary EmptyStackException EnumMap EnumSet Enumeration EventListener EventObject Formatter GregorianCalendar HashMap HashSet Hashtable IdentityHashMap Iterator LinkedHashMap LinkedHashSet LinkedList List ListIterator Locale Map MissingResourceException NavigableMap NavigableSet NoSuchElementException Objects Observable Observer Optional PriorityQueue Properties Queue Random ResourceBundle Scanner Set SimpleTimeZone SortedMap SortedSet Stack StringTokenizer TimeZone Timer TimerTask TreeMap TreeSet UUID Vector WeakHashMap
java.util.concurrent: ArrayBlockingQueue BlockingQueue Callable CompletionService ConcurrentHashMap ConcurrentLinkedQueue ConcurrentMap CopyOnWriteArrayList CopyOnWriteArraySet CountDownLatch CyclicBarrier DelayQueue ExecutionException Executor ExecutorService Executors Future FutureTask LinkedBlockingQueue ScheduledExecutorService Semaphore SynchronousQueue ThreadFactory ThreadPoolExecutor TimeUnit TimeoutException
java.util.concurrent.atomic: AtomicBoolean AtomicInteger AtomicLong AtomicReference
java.util.concurrent.locks: Condition Lock ReadWriteLock ReentrantLock ReentrantReadWriteLock
java.util.regex: MatchResult Matcher Pattern PatternSyntaxException
java.util.zip: CRC32 CheckedInputStream CheckedOutputStream Checksum DataFormatException Deflater GZIPInputStream GZIPOutputStream Inflater ZipEntry ZipException ZipFile ZipInputStream ZipOutputStream
java.util.jar: Attributes JarEntry JarFile JarInputStream JarOutputStream Manifest
java.net: ConnectException DatagramPacket DatagramSocket HttpURLConnection Inet4Address Inet6Address InetAddress InetSocketAddress MalformedURLException NetworkInterface ProtocolException ServerSocket Socket SocketAddress SocketException SocketTimeoutException URI URISyntaxException URL URLClassLoader URLConnection URLDecoder URLEncoder UnknownHostException
java.text: BreakIterator CharacterIterator ChoiceFormat Collator DateFormat DecimalFormat DecimalFormatSymbols FieldPosition Format MessageFormat NumberFormat ParseException ParsePosition SimpleDateFormat StringCharacterIterator
java.math: BigDecimal BigInteger MathContext RoundingMode
java.nio: Buffer ByteBuffer ByteOrder CharBuffer DoubleBuffer FloatBuffer IntBuffer LongBuffer MappedByteBuffer ShortBuffer
java.nio.channels: ByteChannel Channels ClosedChannelException DatagramChannel FileChannel ReadableByteChannel SelectionKey Selector ServerSocketChannel SocketChannel WritableByteChannel
java.nio.charset: Charset CharsetDecoder CharsetEncoder CoderResult StandardCharsets
java.nio.file: FileSystem FileSystems Files Path Paths StandardCopyOption StandardOpenOption
java.security: AccessController GeneralSecurityException KeyException KeyStore MessageDigest NoSuchAlgorithmException Permission PrivateKey PrivilegedAction PublicKey SecureRandom Signature
java.sql: Blob CallableStatement Clob Connection DatabaseMetaData Date Driver DriverManager PreparedStatement ResultSet ResultSetMetaData SQLException SQLWarning Savepoint Statement Time Timestamp Types
javax.sql: ConnectionPoolDataSource DataSource PooledConnection RowSet XADataSource
java.awt: AWTEvent AWTException AlphaComposite BasicStroke BorderLayout Button Canvas CardLayout Checkbox Choice Color Component Composite Container Cursor Dialog Dimension Event FlowLayout Font FontMetrics Frame Graphics Graphics2D GridBagConstraints GridBagLayout GridLayout Image Insets Label Menu MenuBar MenuItem Paint Panel Point Polygon Rectangle RenderingHints ScrollPane Scrollbar Shape Stroke TextArea TextField Toolkit Window
java.awt.event: ActionEvent ActionListener AdjustmentEvent AdjustmentListener ComponentEvent ComponentListener ContainerEvent ContainerListener FocusEvent FocusListener InputEvent ItemEvent ItemListener KeyAdapter KeyEvent KeyListener MouseAdapter MouseEvent MouseListener MouseMotionAdapter MouseMotionListener MouseWheelEvent MouseWheelListener TextEvent TextListener WindowAdapter WindowEvent WindowListener
java.awt.geom: AffineTransform Area Dimension2D Ellipse2D GeneralPath Line2D Point2D Rectangle2D
java.awt.image: BufferedImage ColorModel ImageObserver Raster WritableRaster
java.awt.datatransfer: Clipboard ClipboardOwner DataFlavor Transferable UnsupportedFlavorException
javax.swing: AbstractAction AbstractButton Action BorderFactory Box BoxLayout ButtonGroup DefaultComboBoxModel DefaultListCellRenderer DefaultListModel Icon ImageIcon JApplet JButton JCheckBox JCheckBoxMenuItem JColorChooser JComboBox JComponent JDesktopPane JDialog JEditorPane JFileChooser JFrame JInternalFrame JLabel JLayeredPane JList JMenu JMenuBar JMenuItem JOptionPane JPanel JPasswordField JPopupMenu JProgressBar JRadioButton JRadioButtonMenuItem JRootPane JScrollBar JScrollPane JSeparator JSlider JSpinner JSplitPane JTabbedPane JTable JTextArea JTextField JTextPane JToggleButton JToolBar JToolTip JTree JViewport JWindow KeyStroke ListCellRenderer ListModel ListSelectionModel ScrollPaneConstants SwingConstants SwingUtilities Timer ToolTipManager UIManager WindowConstants
javax.swing.event: CaretEvent CaretListener ChangeEvent ChangeListener DocumentEvent DocumentListener EventListenerList HyperlinkEvent HyperlinkListener ListDataEvent ListDataListener ListSelectionEvent ListSelectionListener MenuEvent MenuListener PopupMenuEvent PopupMenuListener TableModelEvent TableModelListener TreeModelEvent TreeModelListener UndoableEditEvent UndoableEditListener
javax.swing.table: AbstractTableModel DefaultTableCellRenderer DefaultTableColumnModel DefaultTableModel JTableHeader TableCellEditor TableCellRenderer TableColumn TableColumnModel TableModel
javax.swing.text: AbstractDocument AttributeSet BadLocationException Caret DefaultCaret DefaultEditorKit DefaultHighlighter DefaultStyledDocument Document EditorKit Element Highlighter JTextComponent Keymap PlainDocument Position Segment SimpleAttributeSet Style StyleConstants StyledDocument TabExpander Utilities
javax.swing.tree: DefaultMutableTreeNode DefaultTreeCellRenderer DefaultTreeModel DefaultTreeSelectionModel MutableTreeNode TreeCellRenderer TreeModel TreeNode TreePath TreeSelectionModel
javax.swing.border: BevelBorder Border CompoundBorder EmptyBorder EtchedBorder LineBorder TitledBorder
javax.swing.undo: AbstractUndoableEdit CannotRedoException CannotUndoException CompoundEdit UndoManager UndoableEdit
javax.xml.parsers: DocumentBuilder DocumentBuilderFactory ParserConfigurationException SAXParser SAXParserFactory
javax.xml.transform: Result Source Transformer TransformerException TransformerFactory
javax.naming: Context InitialContext NameNotFoundException NamingException
javax.servlet: Filter FilterChain FilterConfig RequestDispatcher Servlet ServletConfig ServletContext ServletException ServletRequest ServletResponse
javax.servlet.http: Cookie HttpServlet HttpServletRequest HttpServletResponse HttpSession
org.w3c.dom: Attr CDATASection Comment DOMException Document DocumentFragment Element EntityReference NamedNodeMap Node NodeList ProcessingInstruction Text
org.xml.sax: Attributes ContentHandler DTDHandler EntityResolver ErrorHandler InputSource Locator SAXException SAXParseException XMLReader
org.xml.sax.helpers: AttributesImpl DefaultHandler XMLReaderFactory
)";

struct TableData {
  std::map<std::string, std::vector<std::string>> by_package;
  std::vector<std::string> packages;
};

const TableData& table() {
  static const TableData data = [] {
    TableData d;
    std::istringstream in(kTable);
    std::string line;
    while (std::getline(in, line)) {
      auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      std::string package = line.substr(0, colon);
      std::istringstream names(line.substr(colon + 1));
      auto& types = d.by_package[package];
      std::string name;
      while (names >> name) types.push_back(name);
      std::sort(types.begin(), types.end());
    }
    for (const auto& [package, types] : d.by_package) d.packages.push_back(package);
    return d;
  }();
  return data;
}

}  // namespace

bool jdk_has_type(std::string_view package, std::string_view simple_name) {
  const auto& by_package = table().by_package;
  auto it = by_package.find(std::string(package));
  if (it == by_package.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), simple_name);
}

const std::vector<std::string>& jdk_packages() { return table().packages; }

std::string_view jdk_table_version() { return "jdk8-curated-2026.08"; }

}  // namespace defectpred::code
